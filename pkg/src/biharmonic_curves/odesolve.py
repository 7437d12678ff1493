"""Closed-form solutions of gamma'''' + p gamma'' + q gamma = 0 on S^4_1.

The four families handled are

========================  =====  ==========  =========
kind                      p      q           epsilon
========================  =====  ==========  =========
``SpacelikeSS``            +2    1 - k1^2     +1
``SpacelikeST``            +2    1 - k1^2     +1
``SpacelikeSNull``         +2    0            +1
``Timelike``               -2    1 - k1^2     -1
========================  =====  ==========  =========

The characteristic polynomial factors as ``(l^2 - mu_A)(l^2 - mu_B)`` with
``mu = -p/2 +- k1`` (``k1 = 1`` for ``SpacelikeSNull``), so roots are exact.
A solution ``gamma = sum c_i f_i`` lies on the pseudo-sphere with
``<gamma', gamma'> = epsilon`` iff the Gram matrix ``<c_i, c_j>`` satisfies
linear conditions obtained by expanding both quantities in the basis.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from . import expoly, lorentz
from .curve import ClosedFormCurve
from .errors import NotRealizable

SQ2 = math.sqrt(2.0)
SQ7 = math.sqrt(7.0)
EXP_DOMAIN = (-1.0, 1.0)
OSC_DOMAIN = (0.0, 2 * math.pi)


class OdeKind(str, enum.Enum):
    SPACELIKE_SS = "SpacelikeSS"
    SPACELIKE_ST = "SpacelikeST"
    SPACELIKE_SNULL = "SpacelikeSNull"
    TIMELIKE = "Timelike"


@dataclass(frozen=True)
class QuarticOde:
    kind: OdeKind
    k1: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", OdeKind(self.kind))
        if self.k1 < 0:
            raise ValueError("k1 must be nonnegative")
        if self.kind is OdeKind.SPACELIKE_SNULL:
            object.__setattr__(self, "k1", 1.0)

    @property
    def epsilon(self) -> int:
        return -1 if self.kind is OdeKind.TIMELIKE else 1

    @property
    def p(self) -> float:
        return -2.0 if self.kind is OdeKind.TIMELIKE else 2.0

    @property
    def q(self) -> float:
        if self.kind is OdeKind.SPACELIKE_SNULL:
            return 0.0
        return 1.0 - self.k1**2

    def residual(self, derivs: np.ndarray) -> np.ndarray:
        """Left-hand side evaluated on stacked derivatives ``(gamma, ..., gamma'''')``."""
        return derivs[4] + self.p * derivs[2] + self.q * derivs[0]


@dataclass(frozen=True)
class RootPair:
    """Roots ``+-sqrt(mu)`` of the characteristic polynomial."""

    mu: float
    multiplicity: int = 1

    @property
    def kind(self) -> str:
        if self.mu == 0:
            return "polynomial"
        return "exponential" if self.mu > 0 else "oscillatory"

    @property
    def frequency(self) -> float:
        return math.sqrt(abs(self.mu))

    @property
    def roots(self) -> list[complex]:
        w = self.frequency
        r = [complex(w), complex(-w)] if self.mu >= 0 else [complex(0, w), complex(0, -w)]
        return r * self.multiplicity


def characteristic_roots(ode: QuarticOde) -> list[RootPair]:
    """The two values of lambda^2 with their basis type.

    The pair coming from ``mu = -p/2 + k1`` is listed first, except that a
    zero pair always leads (its basis functions are ``1, s``).
    """
    k = ode.k1
    mu_a = -ode.p / 2 + k
    mu_b = -ode.p / 2 - k
    if mu_a == mu_b:
        return [RootPair(mu_a, 2)]
    pairs = [RootPair(mu_a), RootPair(mu_b)]
    if mu_b == 0:
        pairs.reverse()
    return pairs


def _pair_basis(pair: RootPair) -> list[expoly.BasisFunction]:
    w = pair.frequency
    if pair.kind == "polynomial":
        return [expoly.constant(), expoly.linear()]
    if pair.kind == "exponential":
        return [expoly.exponential(w), expoly.exponential(-w)]
    return [expoly.cosine(w), expoly.sine(w)]


def fundamental_basis(ode: QuarticOde) -> tuple[expoly.BasisFunction, ...]:
    pairs = characteristic_roots(ode)
    if len(pairs) == 1:
        first = _pair_basis(pairs[0])
        if pairs[0].kind == "polynomial":
            # quadruple zero root cannot occur for the families handled here
            raise ValueError("unsupported quadruple root")
        return tuple(first + [expoly.times_s(f) for f in first])
    return tuple(_pair_basis(pairs[0]) + _pair_basis(pairs[1]))


# ---------------------------------------------------------------------------
# Gram constraints


def _pairs(m: int):
    return [(i, j) for i in range(m) for j in range(i, m)]


def _quadratic_form_equations(basis, order: int, target: float):
    """Linear equations on the Gram entries making sum G_ij f_i^(o) f_j^(o) == target."""
    m = len(basis)
    idx = _pairs(m)
    derived = [f.derivative_terms(order) for f in basis]
    rows: dict[tuple, np.ndarray] = {}
    for col, (i, j) in enumerate(idx):
        weight = 1.0 if i == j else 2.0
        for key, coef in expoly.collect(expoly.product(derived[i], derived[j])).items():
            rows.setdefault(key, np.zeros(len(idx), dtype=complex))[col] += weight * coef
    const_key = (0, 0.0, 0.0)
    rows.setdefault(const_key, np.zeros(len(idx), dtype=complex))
    a, b = [], []
    for key, row in rows.items():
        rhs = target if key == const_key else 0.0
        a.extend([row.real, row.imag])
        b.extend([rhs, 0.0])
    return np.array(a), np.array(b)


@dataclass
class GramTarget:
    """Gram matrix forced by the on-sphere and unit-speed conditions."""

    matrix: np.ndarray
    zero_entries: list[tuple[int, int]]
    null_vectors: list[int]
    radical: list[int]
    rank: int
    consistent: bool
    residual: float

    @property
    def unique(self) -> bool:
        n = self.matrix.shape[0]
        return self.rank == n * (n + 1) // 2

    @property
    def forced_zero(self) -> list[int]:
        """Coefficients orthogonal to every coefficient, itself included.

        In R^5_1 such a vector may still be a nonzero null vector; a non-null
        Frenet frame requires it to vanish.
        """
        return list(self.radical)


def gram_constraints(ode: QuarticOde, basis=None) -> GramTarget:
    """Derive the Gram matrix of the coefficients from |gamma|^2 = 1, |gamma'|^2 = eps."""
    basis = tuple(basis) if basis is not None else fundamental_basis(ode)
    a0, b0 = _quadratic_form_equations(basis, 0, 1.0)
    a1, b1 = _quadratic_form_equations(basis, 1, float(ode.epsilon))
    a = np.vstack([a0, a1])
    b = np.concatenate([b0, b1])
    sol, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    sol[np.abs(sol) < 1e-13] = 0.0
    residual = float(np.max(np.abs(a @ sol - b)))
    m = len(basis)
    g = np.zeros((m, m))
    for val, (i, j) in zip(sol, _pairs(m)):
        g[i, j] = g[j, i] = val
    zero = [(i, j) for (i, j) in _pairs(m) if g[i, j] == 0.0]
    null = [i for i in range(m) if g[i, i] == 0.0]
    radical = [i for i in range(m) if np.all(g[i] == 0.0)]
    return GramTarget(g, zero, null, radical, int(rank), residual < 1e-10, residual)


# ---------------------------------------------------------------------------
# Solutions


@dataclass
class OdeSolution:
    ode: QuarticOde
    basis: tuple[expoly.BasisFunction, ...]
    coefficients: np.ndarray
    name: str = "solution"
    printed_gram: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=float)

    @property
    def gram(self) -> np.ndarray:
        return lorentz.gram(self.coefficients)

    @property
    def roots(self) -> list[complex]:
        return [r for p in characteristic_roots(self.ode) for r in p.roots]

    @property
    def exponential(self) -> bool:
        return any(abs(t.rate.real) > 0 for f in self.basis for t in f.terms)

    def default_domain(self) -> tuple[float, float]:
        return EXP_DOMAIN if self.exponential else OSC_DOMAIN

    def curve(self, domain: tuple[float, float] | None = None) -> ClosedFormCurve:
        return ClosedFormCurve(
            self.basis,
            self.coefficients,
            self.ode.epsilon,
            tuple(domain) if domain is not None else self.default_domain(),
            self.name,
        )

    def gram_discrepancies(self, tol: float = 1e-12) -> dict[tuple[int, int], tuple[float, float]]:
        """Printed Gram values that disagree with the derived target."""
        target = gram_constraints(self.ode, self.basis).matrix
        return {
            ij: (v, float(target[ij]))
            for ij, v in self.printed_gram.items()
            if abs(v - target[ij]) > tol
        }


def realize_gram(g: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Vectors (rows) of R^5_1 whose Gram matrix is ``g``.

    Eigen-factorization ``g = Q diag(l) Q^T``; the eigendirection with a
    negative eigenvalue is sent to the timelike axis, positive ones to the
    spacelike axes in eigenvalue order, zero ones to the zero vector.
    """
    g = np.asarray(g, dtype=float)
    lam, q = np.linalg.eigh(g)
    cut = tol * max(1.0, float(np.max(np.abs(lam))))
    neg = [i for i in range(len(lam)) if lam[i] < -cut]
    pos = [i for i in range(len(lam)) if lam[i] > cut]
    if len(neg) > 1 or len(pos) > lorentz.DIM - 1:
        raise NotRealizable(
            f"Gram signature ({len(neg)} negative, {len(pos)} positive) does not fit in R^5_1"
        )
    place = np.zeros((len(lam), lorentz.DIM))
    for i in neg:
        place[i, 0] = 1.0
    for axis, i in enumerate(pos, start=1):
        place[i, axis] = 1.0
    return (q * np.sqrt(np.abs(lam))) @ place


def random_lorentz(rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """Random element of SO(1,4), ``exp(eta K)`` with K antisymmetric."""
    k = rng.normal(scale=scale, size=(lorentz.DIM, lorentz.DIM))
    k = k - k.T
    return expm(lorentz.SIGNS[:, None] * k)


def solve_coefficients(ode: QuarticOde, preset: str | None = None, seed: int | None = None) -> OdeSolution:
    """Coefficient vectors realizing the derived Gram target.

    With ``preset`` the stored closed-form solution is returned (the ODE must
    match it).  Otherwise the target is factorized; a ``seed`` applies a
    random Lorentz transformation so that solutions are not axis-aligned.
    """
    if preset is not None:
        sol = preset_solution(preset, k1=ode.k1 if preset == "thm3.7-helix" else None)
        if sol.ode.kind is not ode.kind or not math.isclose(sol.ode.k1, ode.k1):
            raise ValueError(f"preset {preset!r} solves {sol.ode}, not {ode}")
        return sol
    target = gram_constraints(ode)
    if not target.consistent:
        raise NotRealizable(f"no Gram matrix satisfies the constraints for {ode}")
    coeffs = realize_gram(target.matrix)
    if seed is not None:
        coeffs = coeffs @ random_lorentz(np.random.default_rng(seed)).T
    return OdeSolution(ode, fundamental_basis(ode), coeffs, name=f"{ode.kind.value}(k1={ode.k1:g})")


# ---------------------------------------------------------------------------
# Presets


def _thm37_circle(_k1=None) -> OdeSolution:
    r = 1 / SQ2
    basis = (expoly.constant(), expoly.linear(), expoly.cosine(SQ2), expoly.sine(SQ2))
    c = [[0, 0, 0, r, 0], [0, 0, 0, 0, 0], [0, r, 0, 0, 0], [0, 0, r, 0, 0]]
    printed = {(0, 0): 0.5, (2, 2): 0.5, (3, 3): 0.5, (0, 2): 0.0, (0, 3): 0.0, (2, 3): 0.0}
    return OdeSolution(QuarticOde(OdeKind.SPACELIKE_SS, 1.0), basis, c, "thm3.7-circle", printed)


def _thm37_helix(k1=None) -> OdeSolution:
    k1 = 0.5 if k1 is None else float(k1)
    if not 0 < k1 < 1:
        raise ValueError(f"thm3.7-helix needs 0 < k1 < 1, got {k1}")
    a, b = math.sqrt(1 - k1), math.sqrt(1 + k1)
    r = 1 / SQ2
    basis = (expoly.cosine(a), expoly.sine(a), expoly.cosine(b), expoly.sine(b))
    c = np.zeros((4, 5))
    c[np.arange(4), np.arange(1, 5)] = r
    printed = {(i, j): (0.5 if i == j else 0.0) for i, j in _pairs(4)}
    return OdeSolution(QuarticOde(OdeKind.SPACELIKE_SS, k1), basis, c, "thm3.7-helix", printed)


def _exp_helix_coefficients() -> np.ndarray:
    return np.array(
        [
            [1, 0, 0, 0, 1],
            [-1, SQ7 / 4, 0, 0, -3 / 4],
            [0, 0, 1 / 2, 1 / 2, 0],
            [-SQ7 / SQ2, 1 / SQ2, 0, 0, -SQ7 / SQ2],
        ]
    )


def _exp_printed(a: float, b: float, c33: float) -> dict:
    printed = {(i, j): 0.0 for i, j in _pairs(4)}
    printed.update({(0, 1): 1 / a**2, (2, 2): c33, (3, 3): c33})
    return printed


def _prop38(_k1=None) -> OdeSolution:
    a, b = 2.0, math.sqrt(6.0)
    basis = (expoly.exponential(a), expoly.exponential(-a), expoly.cosine(b), expoly.sine(b))
    return OdeSolution(
        QuarticOde(OdeKind.SPACELIKE_ST, 5.0), basis, _exp_helix_coefficients(), "prop3.8",
        _exp_printed(a, b, 3 / b**2),
    )


def _prop311_circle(_k1=None) -> OdeSolution:
    basis = (expoly.constant(), expoly.linear(), expoly.exponential(-SQ2), expoly.exponential(SQ2))
    c = [
        [1 / SQ2, 0, 0, 0, 1],
        [0, 0, 0, 0, 0],
        [-1, 1 / SQ2, 0, 0, -1 / SQ2],
        [1, -SQ2 / 4, 1 / (2 * SQ2), 1 / 2, 1 / SQ2],
    ]
    printed = {(i, j): 0.0 for i, j in _pairs(4)}
    printed.update({(0, 0): 0.5, (2, 3): 0.25})
    return OdeSolution(QuarticOde(OdeKind.TIMELIKE, 1.0), basis, c, "prop3.11-circle", printed)


def _prop311_helix(_k1=None) -> OdeSolution:
    a, b = 2.0, SQ2
    basis = (expoly.exponential(a), expoly.exponential(-a), expoly.cosine(b), expoly.sine(b))
    return OdeSolution(
        QuarticOde(OdeKind.TIMELIKE, 3.0), basis, _exp_helix_coefficients(), "prop3.11-helix",
        _exp_printed(a, b, 1 / b**2),
    )


def _great_circle(_k1=None) -> OdeSolution:
    ode = QuarticOde(OdeKind.SPACELIKE_SS, 0.0)
    c = [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0]]
    return OdeSolution(ode, fundamental_basis(ode), c, "great-circle")


PRESETS = {
    "great-circle": _great_circle,
    "thm3.7-circle": _thm37_circle,
    "thm3.7-helix": _thm37_helix,
    "prop3.8": _prop38,
    "prop3.11-circle": _prop311_circle,
    "prop3.11-helix": _prop311_helix,
}


def preset_solution(name: str, k1: float | None = None) -> OdeSolution:
    try:
        build = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return build(k1)


# ---------------------------------------------------------------------------
# Verification

ODE_TOL = 1e-8
CONSTRAINT_TOL = 1e-8
RK_TOL = 1e-6


@dataclass
class VerificationReport:
    ode_residual: float
    sphere_residual: float
    speed_residual: float
    rk_error: float
    grid: tuple[float, float]
    tolerances: dict = field(
        default_factory=lambda: {
            "ode_residual": ODE_TOL,
            "sphere_residual": CONSTRAINT_TOL,
            "speed_residual": CONSTRAINT_TOL,
            "rk_error": RK_TOL,
        }
    )

    def as_dict(self) -> dict[str, float]:
        return {
            "ode_residual": self.ode_residual,
            "sphere_residual": self.sphere_residual,
            "speed_residual": self.speed_residual,
            "rk_error": self.rk_error,
        }

    @property
    def passed(self) -> dict[str, bool]:
        return {k: v < self.tolerances[k] for k, v in self.as_dict().items()}

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


def _basis_derivs(basis, s: np.ndarray, order: int) -> np.ndarray:
    return np.stack([f(s, order) for f in basis], axis=-1)


def integrate(sol: OdeSolution, ode: QuarticOde, s_eval: np.ndarray, s_start: float,
              rtol: float = 1e-12, atol: float = 1e-12) -> np.ndarray:
    """Integrate the ODE numerically from the solution's data at ``s_start``.

    The vector ODE decouples per coordinate; the state stacks
    (x, x', x'', x''') for each of the five coordinates (20 components).
    """
    y0 = np.stack([_basis_derivs(sol.basis, np.array(s_start), k) @ sol.coefficients for k in range(4)])

    def rhs(_s, y):
        y = y.reshape(4, lorentz.DIM)
        return np.concatenate([y[1], y[2], y[3], -ode.p * y[2] - ode.q * y[0]])

    out = np.empty((len(s_eval), lorentz.DIM))
    for mask, end in ((s_eval >= s_start, s_eval.max()), (s_eval < s_start, s_eval.min())):
        pts = s_eval[mask]
        if pts.size == 0 or end == s_start:
            out[mask] = y0[0]
            continue
        order = np.argsort(pts) if end > s_start else np.argsort(-pts)
        res = solve_ivp(rhs, (s_start, end), y0.ravel(), method="DOP853", t_eval=pts[order],
                        rtol=rtol, atol=atol)
        if not res.success:
            raise RuntimeError(f"integrator failed: {res.message}")
        vals = np.empty((pts.size, lorentz.DIM))
        vals[order] = res.y[: lorentz.DIM].T
        out[mask] = vals
    return out


def verify_solution(sol: OdeSolution, ode: QuarticOde | None = None, grid=None,
                    rtol: float = 1e-12, atol: float = 1e-12) -> VerificationReport:
    """ODE, on-sphere and unit-speed residuals plus a numerical-integration cross-check."""
    ode = ode or sol.ode
    if grid is None:
        lo, hi = sol.default_domain()
        grid = np.linspace(lo, hi, 401)
    grid = np.asarray(grid, dtype=float)
    derivs = [_basis_derivs(sol.basis, grid, k) @ sol.coefficients for k in range(5)]
    ode_res = float(np.max(np.linalg.norm(ode.residual(derivs), axis=-1)))
    sphere = float(np.max(np.abs(lorentz.inner(derivs[0], derivs[0]) - 1.0)))
    speed = float(np.max(np.abs(lorentz.inner(derivs[1], derivs[1]) - ode.epsilon)))
    s_start = 0.0 if grid.min() <= 0.0 <= grid.max() else float(grid[0])
    numeric = integrate(sol, ode, grid, s_start, rtol, atol)
    rk = float(np.max(np.linalg.norm(numeric - derivs[0], axis=-1)))
    return VerificationReport(ode_res, sphere, speed, rk, (float(grid.min()), float(grid.max())))


def solution_to_json(sol: OdeSolution, report: VerificationReport | None = None) -> dict:
    return {
        "name": sol.name,
        "kind": sol.ode.kind.value,
        "k1": sol.ode.k1,
        "roots": [[r.real, r.imag] for r in sol.roots],
        "basis": [f.label for f in sol.basis],
        "coefficients": sol.coefficients.tolist(),
        "gram": sol.gram.tolist(),
        "residuals": report.as_dict() if report is not None else {},
    }
