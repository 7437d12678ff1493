"""Linear algebra in R^5_1 with the metric diag(-1, +1, +1, +1, +1).

Vectors are plain ``numpy`` arrays whose last axis has length 5; the first
component is the timelike one.  Every function broadcasts over leading axes.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DegenerateStep, NullVector, ZeroVector

DIM = 5
METRIC = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])
SIGNS = np.array([-1.0, 1.0, 1.0, 1.0, 1.0])

# |<v,v>| <= NULL_TOL * scale**2 counts as null
NULL_TOL = 1e-9
ZERO_TOL = 1e-14


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"

    @property
    def sign(self) -> int:
        return {"spacelike": 1, "timelike": -1, "null": 0}[self.value]


def vec(*components) -> np.ndarray:
    """Build a float vector of R^5_1, e.g. ``vec(1, 0, 0, 0, 1)``."""
    v = np.asarray(components[0] if len(components) == 1 else components, dtype=float)
    if v.shape[-1] != DIM:
        raise ValueError(f"expected {DIM} components, got shape {v.shape}")
    return v


def inner(u, v):
    """Lorentzian inner product -u0 v0 + u1 v1 + ... + u4 v4."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(u * v * SIGNS, axis=-1)


def norm_sq(v):
    return inner(v, v)


def euclidean_norm(v):
    return np.linalg.norm(np.asarray(v, dtype=float), axis=-1)


def causal_character(v, scale: float | None = None, tol: float = NULL_TOL) -> CausalCharacter:
    """Classify ``v`` by the sign of <v,v>.

    ``scale`` is the magnitude reference for the null test; it defaults to the
    largest absolute component of ``v``.
    """
    v = np.asarray(v, dtype=float)
    vmax = float(np.max(np.abs(v)))
    if vmax <= ZERO_TOL:
        raise ZeroVector("cannot classify the zero vector")
    if scale is None:
        scale = vmax
    q = float(inner(v, v))
    if abs(q) <= tol * scale * scale:
        return CausalCharacter.NULL
    return CausalCharacter.SPACELIKE if q > 0 else CausalCharacter.TIMELIKE


def normalize(v, tol: float = NULL_TOL) -> np.ndarray:
    """Return ``v / sqrt(|<v,v>|)``; raises NullVector when no unit rescaling exists."""
    v = np.asarray(v, dtype=float)
    if causal_character(v, tol=tol) is CausalCharacter.NULL:
        raise NullVector(f"null vector {v} has no normalization")
    return v / np.sqrt(abs(float(inner(v, v))))


def orthonormalize(vectors, tol: float = NULL_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Gram-Schmidt with respect to the indefinite metric, in the given order.

    Returns the orthonormal vectors (stacked, same order) and the sign of
    <w_j, w_j> for each.  No pivoting is done: frame order is meaningful.
    """
    vs = np.array(vectors, dtype=float, ndmin=2)
    out = []
    signs = []
    for j, v in enumerate(vs):
        r = v.copy()
        for w, sgn in zip(out, signs):
            r = r - sgn * inner(r, w) * w
        scale = max(float(np.max(np.abs(v))), 1.0)
        if float(np.max(np.abs(r))) <= 1e-12 * scale:
            raise DegenerateStep(f"vector {j} is linearly dependent on its predecessors", j)
        q = float(inner(r, r))
        if abs(q) <= tol * float(np.max(np.abs(r))) ** 2:
            raise DegenerateStep(f"residual of vector {j} is null: {r}", j)
        sgn = 1.0 if q > 0 else -1.0
        out.append(r / np.sqrt(abs(q)))
        signs.append(sgn)
    return np.array(out), np.array(signs)


def gram(vectors) -> np.ndarray:
    """Matrix of pairwise inner products <v_i, v_j>."""
    vs = np.asarray(vectors, dtype=float)
    return (vs * SIGNS) @ vs.T


def orthogonal_complement(vectors) -> np.ndarray:
    """Basis (rows) of the metric-orthogonal complement of span(vectors).

    The basis is Euclidean-orthonormal, not metric-orthonormal.
    """
    vs = np.asarray(vectors, dtype=float) * SIGNS
    _, sv, vt = np.linalg.svd(vs)
    rank = int(np.sum(sv > 1e-12 * max(sv[0], 1.0)))
    return vt[rank:]
