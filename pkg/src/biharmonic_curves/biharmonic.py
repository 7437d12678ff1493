"""Bitension field, biharmonicity constraint systems and curve classification.

For a unit-speed curve in S^4_1 the bitension is
``tau2 = nabla_T^3 T - R(T, nabla_T T) T`` with ``R`` of constant curvature +1.
In the Frenet frame (signs ``e_T, e_N, e_B1`` as in :mod:`.frenet`) its
components are::

    T : -3 e_T e_N k1 k1'
    N : k1'' - e_T e_N k1^3 - e_N e_B1 k1 k2^2 + e_T k1
    B1: 2 k1' k2 + k1 k2'
    B2: k1 k2 k3

so non-geodesic solutions have constant k1, k2 with ``k2 k3 = 0`` and a
case identity: ``k1^2 + k2^2 = 1`` (I1), ``k1^2 - k2^2 = 1`` (I2, II) and
``k1^2 + k2^2 = -1`` (I4, never satisfied).
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from . import lorentz
from .curvature import CurvatureOperator
from .curve import Curve
from .errors import GeodesicPoint, GridTooSmall, MixedCase, NullFrameVector
from .frenet import SIGNATURE, CaseTag, frenet_apparatus, nabla

UNIT_SPHERE = CurvatureOperator(1.0)


class Verdict(str, enum.Enum):
    GEODESIC = "Geodesic"
    CIRCLE = "ProperBiharmonicCircle"
    HELIX = "ProperBiharmonicHelix"
    NON_BIHARMONIC = "NonBiharmonic"
    FORBIDDEN = "CaseForbidsProper"


@dataclass(frozen=True)
class Tolerances:
    geodesic: float = 1e-7
    null: float = lorentz.NULL_TOL
    torsion: float = 1e-6
    constancy: float = 1e-5
    identity: float = 1e-5
    product: float = 1e-5
    residual: float = 1e-5


def tension(curve: Curve, s: float) -> np.ndarray:
    g = curve.jet(s, 2)
    return nabla(g, g.d()).value


def bitension_at(curve: Curve, s: float, op: CurvatureOperator = UNIT_SPHERE) -> np.ndarray:
    g = curve.jet(s, 4)
    t = g.d()
    x1 = nabla(g, t)
    x3 = nabla(g, nabla(g, x1))
    return x3.value - op(t.value, x1.value, t.value)


def bitension(curve: Curve, samples: Sequence[float], op: CurvatureOperator = UNIT_SPHERE) -> np.ndarray:
    """``tau2`` at every sample, shape ``(n, 5)``."""
    curve.check_domain(samples)
    return np.array([bitension_at(curve, float(s), op) for s in samples])


def residual_norms(tau2: np.ndarray) -> tuple[float, float]:
    """(sup sqrt|<tau2, tau2>|, sup Euclidean norm)."""
    lor = float(np.max(np.sqrt(np.abs(lorentz.inner(tau2, tau2)))))
    euc = float(np.max(np.linalg.norm(tau2, axis=-1)))
    return lor, euc


def identity_value(case: CaseTag, k1, k2):
    """Case identity minus its right-hand side (zero for proper biharmonic curves)."""
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    case = CaseTag(case)
    if case is CaseTag.I1:
        return k1**2 + k2**2 - 1.0
    if case in (CaseTag.I2, CaseTag.II):
        return k1**2 - k2**2 - 1.0
    if case is CaseTag.I4:
        return k1**2 + k2**2 + 1.0
    raise ValueError(f"no case identity for {case.value}")


@dataclass
class BiharmonicReport:
    verdict: Verdict
    residual_sup: float
    residual_sup_euclidean: float
    constraints: dict[str, float]
    case: str | None
    s: np.ndarray | None = None
    k1: np.ndarray | None = None
    k2: np.ndarray | None = None
    k3: np.ndarray | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self, arrays: bool = False) -> dict:
        out = {
            "verdict": self.verdict.value,
            "residual_sup": self.residual_sup,
            "residual_sup_euclidean": self.residual_sup_euclidean,
            "constraints": {k: float(v) for k, v in self.constraints.items()},
            "case": self.case,
            "notes": list(self.notes),
        }
        if arrays:
            for name in ("s", "k1", "k2", "k3"):
                val = getattr(self, name)
                out[name] = None if val is None else [float(x) for x in val]
        return out


def _spread(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.max(x) - np.min(x)) if x.size else 0.0


def _constraint_values(case: CaseTag, s, k1, k2, k3) -> dict[str, float]:
    k1, k2, k3 = (np.asarray(v, dtype=float) for v in (k1, k2, k3))
    out = {
        "k1_mean": float(np.mean(k1)),
        "k2_mean": float(np.mean(k2)),
        "k3_mean": float(np.mean(k3)),
        "k1_defect": _spread(k1),
        "k2_defect": _spread(k2),
        "k2k3": float(np.max(np.abs(k2 * k3))),
        "circle_k1": float(np.max(np.abs(k1 - 1.0))),
    }
    if case in (CaseTag.I1, CaseTag.I2, CaseTag.II, CaseTag.I4):
        ident = identity_value(case, k1, k2)
        out["identity"] = float(np.mean(ident))
        out["identity_abs_max"] = float(np.max(np.abs(ident)))
    s = np.asarray(s, dtype=float)
    if s.size >= 3 and "identity" in out:
        # frame components of tau2 rebuilt from curvature data alone
        e_t, e_n = SIGNATURE[case][:2]
        d1 = np.gradient(k1, s, edge_order=2)
        d2 = np.gradient(d1, s, edge_order=2)
        k2p = np.gradient(k2, s, edge_order=2)
        out["eq_tangent"] = float(np.max(np.abs(3 * k1 * d1)))
        out["eq_normal"] = float(np.max(np.abs(d2 - e_t * e_n * k1 * identity_value(case, k1, k2))))
        out["eq_binormal"] = float(np.max(np.abs(2 * d1 * k2 + k1 * k2p)))
        out["eq_k1k2k3"] = float(np.max(np.abs(k1 * k2 * k3)))
    return out


def verdict_from_curvatures(case: CaseTag, constraints: dict[str, float], k1, k2,
                            residual: float | None, tol: Tolerances = Tolerances()) -> Verdict:
    """Verdict for a non-null case from curvature data (and optional residual)."""
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    case = CaseTag(case)
    if np.max(np.abs(k1)) < tol.geodesic:
        return Verdict.GEODESIC
    if case is CaseTag.I4:
        return Verdict.FORBIDDEN
    residual_ok = residual is None or residual < tol.residual
    constant = constraints["k1_defect"] < tol.constancy and constraints["k2_defect"] < tol.constancy
    if not (constant and residual_ok and constraints["identity_abs_max"] < tol.identity):
        return Verdict.NON_BIHARMONIC
    if np.max(np.abs(k2)) < tol.constancy:
        return Verdict.CIRCLE
    if constraints["k2k3"] < tol.product:
        return Verdict.HELIX
    return Verdict.NON_BIHARMONIC


def classify_curvature_data(case, s, k1, k2, k3, tol: Tolerances = Tolerances(),
                            residual: float | None = None) -> BiharmonicReport:
    """Evaluate the constraint system of ``case`` on supplied curvature samples."""
    case = CaseTag(case)
    s = np.asarray(s, dtype=float)
    k1, k2, k3 = (np.broadcast_to(np.asarray(v, dtype=float), s.shape) for v in (k1, k2, k3))
    if case in (CaseTag.I3, CaseTag.I5):
        rep = check_null_case_system(case, k1, k2, k3, s, tol=tol.identity)
        if np.max(np.abs(k1)) < tol.geodesic:
            verdict = Verdict.GEODESIC
        elif case is CaseTag.I5:
            verdict = Verdict.FORBIDDEN
        else:
            verdict = Verdict.CIRCLE if rep.passed else Verdict.NON_BIHARMONIC
        return BiharmonicReport(verdict, math.nan if residual is None else residual, math.nan,
                                rep.residuals, case.value, s, k1, k2, k3, rep.notes)
    cons = _constraint_values(case, s, k1, k2, k3)
    verdict = verdict_from_curvatures(case, cons, k1, k2, residual, tol)
    return BiharmonicReport(verdict, math.nan if residual is None else residual, math.nan,
                            cons, case.value, s, k1, k2, k3)


def classify(curve: Curve, samples: Sequence[float] | None = None, tol: Tolerances = Tolerances(),
             curvatures: dict | None = None) -> BiharmonicReport:
    """Classify ``curve`` as geodesic, proper biharmonic circle/helix, or neither.

    ``curvatures`` (``{"case": "I3", "k1": ..., "k2": ..., "k3": ...}`` on the
    same samples) is used when the frame is null and cannot be extracted.
    """
    samples = curve.default_samples() if samples is None else np.asarray(samples, dtype=float)
    tau2 = bitension(curve, samples)
    lor, euc = residual_norms(tau2)
    tens = np.array([np.linalg.norm(tension(curve, float(s))) for s in samples])
    notes = [f"max |<gamma',gamma'> - eps| = {_speed_defect(curve, samples):.3e}"]
    if np.max(tens) < tol.geodesic:
        cons = {"k1_max": float(np.max(tens))}
        return BiharmonicReport(Verdict.GEODESIC, lor, euc, cons, None, samples,
                                np.zeros_like(samples), None, None, notes)
    try:
        app = frenet_apparatus(curve, samples, geodesic_tol=tol.geodesic, torsion_tol=tol.torsion,
                               null_tol=tol.null)
    except GeodesicPoint:
        cons = {"k1_max": float(np.max(tens)), "k1_defect": _spread(tens)}
        notes.append("tension vanishes at some samples but not all")
        return BiharmonicReport(Verdict.NON_BIHARMONIC, lor, euc, cons, None, samples, tens, None, None, notes)
    except MixedCase as exc:
        notes.append(str(exc))
        cons = {"k1_max": float(np.max(tens)), "k1_defect": _spread(tens), "mixed_case": 1.0}
        return BiharmonicReport(Verdict.NON_BIHARMONIC, lor, euc, cons, "mixed", samples, tens, None, None, notes)
    except NullFrameVector as exc:
        if curvatures is None:
            raise
        rep = classify_curvature_data(curvatures.get("case", exc.case), samples, curvatures["k1"],
                                      curvatures["k2"], curvatures["k3"], tol)
        rep.residual_sup, rep.residual_sup_euclidean = lor, euc
        rep.notes = notes + [f"frame extraction failed: {exc}"] + rep.notes
        return rep
    cons = _constraint_values(app.case_tag, app.s, app.k1, app.k2, app.k3)
    verdict = verdict_from_curvatures(app.case_tag, cons, app.k1, app.k2, euc, tol)
    return BiharmonicReport(verdict, lor, euc, cons, app.case_tag.value, app.s, app.k1, app.k2, app.k3, notes)


def _speed_defect(curve: Curve, samples) -> float:
    t = curve.evaluate(np.asarray(samples, dtype=float), 1)
    return float(np.max(np.abs(lorentz.inner(t, t) - curve.epsilon)))


# ---------------------------------------------------------------------------
# Null frames (curvature data only)


@dataclass
class NullCaseReport:
    case: str
    residuals: dict[str, float]
    passed: bool
    obstruction: bool
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def _sample(fn, grid: np.ndarray) -> np.ndarray:
    if callable(fn):
        return np.asarray(np.vectorize(fn, otypes=[float])(grid), dtype=float)
    return np.broadcast_to(np.asarray(fn, dtype=float), grid.shape).astype(float)


def _cumulative_integral(fn, grid: np.ndarray) -> np.ndarray:
    """``int_{grid[0]}^{s} fn`` at every grid point."""
    if callable(fn):
        pieces = [quad(fn, a, b, epsabs=1e-14, epsrel=1e-13)[0] for a, b in zip(grid[:-1], grid[1:])]
    else:
        vals = _sample(fn, grid)
        pieces = 0.5 * (vals[1:] + vals[:-1]) * np.diff(grid)
    return np.concatenate([[0.0], np.cumsum(pieces)])


def check_null_case_system(case, k1: Callable | np.ndarray, k2, k3, grid, tol: float = 1e-10) -> NullCaseReport:
    """Constraint residuals for the null-frame cases I3 and I5.

    I3: ``k1 == 1`` and ``k2' + k2 k3 == 0``, the latter checked in integrated
    form ``k2(s) = k2(s0) exp(-int k3)`` (quadrature for callables,
    trapezoid for sampled arrays).
    I5: ``k1 k2^2 == 0`` must hold; with ``k2`` forced to zero the normal
    equation leaves ``k2 k3 + 1 = 0``, a contradiction, so only geodesics
    survive.
    """
    case = CaseTag(case)
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2:
        raise GridTooSmall("need at least two grid points")
    a1, a2, a3 = (_sample(f, grid) for f in (k1, k2, k3))
    if case is CaseTag.I3:
        # the derivation gives k1 = -+1; k1 is nonnegative, so k1 = 1
        integral = _cumulative_integral(k3, grid)
        drift = a2 - a2[0] * np.exp(-integral)
        res = {
            "k1_minus_1": float(np.max(np.abs(a1 - 1.0))),
            "k2_transport": float(np.max(np.abs(drift))),
        }
        ok = all(v < tol for v in res.values())
        return NullCaseReport(case.value, res, ok, False, ["k1 = -+1 in the derivation; k1 = 1 taken"])
    if case is CaseTag.I5:
        k1k2sq = float(np.max(np.abs(a1 * a2**2)))
        res = {
            "k1k2sq": k1k2sq,
            "k2k3_plus_1": float(np.max(np.abs(a2 * a3 + 1.0))),
            "k1_in_0_1": float(np.max(np.minimum(np.abs(a1), np.abs(a1 - 1.0)))),
        }
        nongeodesic = bool(np.max(np.abs(a1)) > tol)
        obstruction = k1k2sq > tol or nongeodesic
        notes = []
        if k1k2sq > tol:
            notes.append("k1 k2^2 != 0: tau2 has a nonzero B2 component")
        if nongeodesic:
            notes.append("k2 = 0 forces k2 k3 + 1 = 0 in the N component: contradiction")
        return NullCaseReport(case.value, res, not obstruction, obstruction, notes)
    raise ValueError(f"check_null_case_system handles I3 and I5, not {case.value}")
