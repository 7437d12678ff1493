"""Frenet frames and curvatures of non-null curves in S^4_1.

The intrinsic connection of the pseudo-sphere comes from the ambient
derivative through the Gauss formula ``nabla_T X = X' + <T, X> gamma``.  All
fields are carried as Taylor jets (:mod:`.jets`), so curvatures and frames
inherit the accuracy of the curve's own derivatives.

One recursion covers every non-null causal case.  With ``e_X = <X, X>``::

    nabla_T T  = k1 N
    nabla_T N  = -e_T e_N k1 T + k2 B1
    nabla_T B1 = -e_N e_B1 k2 N + k3 B2
    nabla_T B2 = -e_B1 e_B2 k3 B1

which reproduces the four coefficient patterns of the cases I1, I2, I4, II.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import lorentz
from .curve import Curve
from .errors import GeodesicPoint, MixedCase, NullFrameVector, NumericalFailure
from .jets import Jet, inner

GEODESIC_TOL = 1e-7
# below this Euclidean size nabla_T N + e k1 T counts as zero (k2 = 0)
TORSION_TOL = 1e-6


class CaseTag(str, enum.Enum):
    I1 = "I1"
    I2 = "I2"
    I3 = "I3"
    I4 = "I4"
    I5 = "I5"
    II = "II"


SIGNATURE = {
    CaseTag.I1: (1, 1, 1, -1),
    CaseTag.I2: (1, 1, -1, 1),
    CaseTag.I4: (1, -1, 1, 1),
    CaseTag.II: (-1, 1, 1, 1),
}

_PATTERN = {(1, 1, 1): CaseTag.I1, (1, 1, -1): CaseTag.I2, (1, -1, 1): CaseTag.I4, (-1, 1, 1): CaseTag.II}


def frenet_matrix(case: CaseTag, k1: float, k2: float, k3: float) -> np.ndarray:
    """Coefficients A with ``nabla_T E_i = sum_j A[i, j] E_j`` for E = (T, N, B1, B2)."""
    e = SIGNATURE[CaseTag(case)]
    return np.array(
        [
            [0.0, k1, 0.0, 0.0],
            [-e[0] * e[1] * k1, 0.0, k2, 0.0],
            [0.0, -e[1] * e[2] * k2, 0.0, k3],
            [0.0, 0.0, -e[2] * e[3] * k3, 0.0],
        ]
    )


def nabla(gamma: Jet, field: Jet) -> Jet:
    """Covariant derivative along the curve, ``X' + <gamma', X> gamma``."""
    return field.d() + inner(gamma.d(), field) * gamma


def covariant_derivative(curve: Curve, field, s: float) -> np.ndarray:
    """``nabla_T X`` at ``s``.

    ``field`` is either a :class:`Jet` of X at ``s`` (order >= 1) or a
    callable mapping the curve's jet at ``s`` to such a jet, e.g.
    ``lambda g: frame_jets(g, curve.epsilon).N``.
    """
    curve.check_domain(s)
    g = curve.jet(s)
    x = field(g) if callable(field) else field
    if not isinstance(x, Jet):
        x = Jet.from_derivatives(x)
    return nabla(g, x).value


@dataclass
class PointFrame:
    """Frame at one parameter value; T, N, B1 carry derivatives."""

    case: CaseTag
    gamma: Jet
    T: Jet
    N: Jet
    B1: Jet
    B2: np.ndarray
    k1: Jet
    k2: Jet
    k3: float
    tension: Jet

    @property
    def vectors(self) -> np.ndarray:
        return np.array([self.T.value, self.N.value, self.B1.value, self.B2])


def _sign(q: float) -> int:
    return 1 if q > 0 else -1


def _is_null(v: Jet | np.ndarray, q: float, tol: float) -> bool:
    v = v.value if isinstance(v, Jet) else v
    return abs(q) <= tol * float(np.max(np.abs(v))) ** 2


def _completion(frame_vectors, previous: np.ndarray | None) -> np.ndarray:
    """Unit vector orthogonal to ``frame_vectors`` with the largest <v, v>.

    With ``previous`` the projection of the previous sample's vector onto the
    complement is used instead, which keeps the choice continuous.
    """
    comp = lorentz.orthogonal_complement(frame_vectors)
    if previous is not None:
        m = lorentz.gram(comp)
        rhs = lorentz.inner(comp, previous)
        v = np.linalg.solve(m, rhs) @ comp
        if not _is_null(v, float(lorentz.inner(v, v)), lorentz.NULL_TOL):
            return v / np.sqrt(abs(lorentz.inner(v, v)))
    lam, vecs = np.linalg.eigh(lorentz.gram(comp))
    v = vecs[:, -1] @ comp
    v = v / np.sqrt(abs(lorentz.inner(v, v)))
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return v


def _align(v: np.ndarray, previous: np.ndarray | None, fallback_sign: float) -> float:
    if previous is not None:
        return 1.0 if np.dot(v, previous) >= 0 else -1.0
    return fallback_sign


def frame_jets(
    gamma: Jet,
    epsilon: int,
    previous: PointFrame | None = None,
    geodesic_tol: float = GEODESIC_TOL,
    torsion_tol: float = TORSION_TOL,
    null_tol: float = lorentz.NULL_TOL,
    s: float | None = None,
) -> PointFrame:
    """Frenet frame from the order-4 jet of the curve at one point."""
    e_t = 1 if epsilon > 0 else -1
    t = gamma.d()
    x1 = nabla(gamma, t)
    if np.linalg.norm(x1.value) < geodesic_tol:
        raise GeodesicPoint(f"|nabla_T T| = {np.linalg.norm(x1.value):.3e} below threshold at s={s}")
    q1 = inner(x1, x1)
    if _is_null(x1, q1.value, null_tol):
        raise NullFrameVector(f"principal normal is null at s={s}", index=1, s=s)
    e_n = _sign(q1.value)
    k1 = (q1 * e_n).sqrt()
    n = x1 / k1

    w = nabla(gamma, n) + t * (e_t * e_n) * k1
    prev_b1 = previous.B1.value if previous is not None else None
    prev_b2 = previous.B2 if previous is not None else None
    if np.linalg.norm(w.value) < torsion_tol:
        # frame stops at N; complete it continuously with k2 = k3 = 0
        b1v = _completion([gamma.value, t.value, n.value], prev_b1)
        b1v = b1v * _align(b1v, prev_b1, 1.0)
        b1 = Jet.constant(b1v, 1)
        e_b1 = _sign(lorentz.inner(b1v, b1v))
        k2 = Jet.constant(0.0, 1)
        k3 = 0.0
        b2 = _completion([gamma.value, t.value, n.value, b1v], None)
    else:
        q2 = inner(w, w)
        if _is_null(w, q2.value, null_tol):
            raise NullFrameVector(f"first binormal is null at s={s}", index=2, s=s)
        e_b1 = _sign(q2.value)
        k2 = (q2 * e_b1).sqrt()
        b1 = w / k2
        flip = _align(b1.value, prev_b1, 1.0)
        b1, k2 = b1 * flip, k2 * flip
        v = nabla(gamma, b1) + n * (e_n * e_b1) * k2
        b2 = _completion([gamma.value, t.value, n.value, b1.value], None)
        k3 = None
    e_b2 = _sign(lorentz.inner(b2, b2))
    if prev_b2 is not None:
        b2 = b2 * _align(b2, prev_b2, 1.0)
    elif np.linalg.det(np.array([gamma.value, t.value, n.value, b1.value, b2])) < 0:
        b2 = -b2
    if k3 is None:
        k3 = float(lorentz.inner(v.value, b2)) * e_b2

    try:
        case = _PATTERN[(e_t, e_n, e_b1)]
    except KeyError:
        raise NumericalFailure(f"impossible causal pattern {(e_t, e_n, e_b1)} at s={s}") from None
    return PointFrame(case, gamma, t, n, b1, b2, k1, k2, k3, x1)


@dataclass
class FrenetApparatus:
    case_tag: CaseTag
    s: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray

    @property
    def frames(self) -> np.ndarray:
        """Shape ``(n, 4, 5)``: T, N, B1, B2 per sample."""
        return np.stack([self.T, self.N, self.B1, self.B2], axis=1)

    def gram(self, i: int) -> np.ndarray:
        return lorentz.gram(self.frames[i])

    def write_csv(self, path, frames: bool = False) -> None:
        header = ["s", "k1", "k2", "k3", "case"]
        if frames:
            for name in ("T", "N", "B1", "B2"):
                header += [f"{name}{j}" for j in range(5)]
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(header)
            for i, s in enumerate(self.s):
                row = [repr(float(s)), repr(float(self.k1[i])), repr(float(self.k2[i])),
                       repr(float(self.k3[i])), self.case_tag.value]
                if frames:
                    row += [repr(float(x)) for x in self.frames[i].ravel()]
                out.writerow(row)


def point_frames(curve: Curve, samples: Sequence[float], **tols) -> list[PointFrame]:
    frames: list[PointFrame] = []
    prev = None
    for s in np.asarray(samples, dtype=float):
        curve.check_domain(s)
        prev = frame_jets(curve.jet(float(s)), curve.epsilon, prev, s=float(s), **tols)
        frames.append(prev)
    return frames


def frenet_apparatus(curve: Curve, samples: Sequence[float] | None = None, **tols) -> FrenetApparatus:
    """Frame fields and curvatures at each sample.

    Keyword tolerances: ``geodesic_tol``, ``torsion_tol``, ``null_tol``.
    Raises GeodesicPoint, NullFrameVector, or MixedCase when the causal case
    changes between samples.
    """
    samples = curve.default_samples() if samples is None else np.asarray(samples, dtype=float)
    frames = point_frames(curve, samples, **tols)
    cases = {f.case for f in frames}
    if len(cases) > 1:
        raise MixedCase(f"causal case changes along the curve: {sorted(c.value for c in cases)}")
    return FrenetApparatus(
        frames[0].case,
        np.asarray(samples, dtype=float),
        np.array([f.T.value for f in frames]),
        np.array([f.N.value for f in frames]),
        np.array([f.B1.value for f in frames]),
        np.array([f.B2 for f in frames]),
        np.array([f.k1.value for f in frames]),
        np.array([f.k2.value for f in frames]),
        np.array([f.k3 for f in frames]),
    )


def detect_case(curve: Curve, s: float, **tols) -> CaseTag:
    """Causal case at ``s``; null N or B1 raise NullFrameVector (see ``.case``)."""
    curve.check_domain(s)
    return frame_jets(curve.jet(float(s)), curve.epsilon, s=float(s), **tols).case


FieldFn = Callable[[Jet], Jet]


def frame_field(name: str, epsilon: int) -> FieldFn:
    """Field accessor usable with :func:`covariant_derivative`."""
    def get(g: Jet) -> Jet:
        f = frame_jets(g, epsilon)
        return {"T": f.T, "N": f.N, "B1": f.B1}[name]
    return get
