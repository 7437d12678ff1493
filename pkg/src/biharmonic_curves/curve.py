"""Arclength-parametrized curves on the pseudo-sphere S^4_1 in R^5_1.

Two representations share one interface:

* :class:`ClosedFormCurve` -- ``gamma(s) = sum_i c_i f_i(s)`` with exponential
  polynomial basis functions, differentiated exactly.
* :class:`SampledCurve` -- positions on a uniform grid, differentiated with
  9-point finite-difference stencils.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import lorentz
from .errors import InsufficientSamples, OutOfDomain, TooFewSamples
from .expoly import BasisFunction
from .jets import Jet

MAX_ORDER = 4
STENCIL_POINTS = 9
CSV_HEADER = ["s", "x0", "x1", "x2", "x3", "x4"]

# Minimum node spacing per derivative order.  Below it, rounding error
# (~eps / h**order) swamps the O(h^6) truncation error, so the stencil
# strides over grid nodes instead.
SPACING_FLOOR = {0: 0.0, 1: 0.0, 2: 1e-3, 3: 5e-3, 4: 2e-2}


def fd_weights(x0: float, nodes: np.ndarray, max_order: int) -> np.ndarray:
    """Fornberg's finite-difference weights.

    Returns ``w`` with shape ``(max_order + 1, len(nodes))`` such that
    ``f^(m)(x0) ~= w[m] @ f(nodes)``.
    """
    n = len(nodes)
    w = np.zeros((max_order + 1, n))
    w[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[k, i] = c1 * (k * w[k - 1, i - 1] - c5 * w[k, i - 1]) / c2
                w[0, i] = -c1 * c5 * w[0, i - 1] / c2
            for k in range(mn, 0, -1):
                w[k, j] = (c4 * w[k, j] - k * w[k - 1, j]) / c3
            w[0, j] = c4 * w[0, j] / c3
        c1 = c2
    return w


class Curve:
    """Common interface; subclasses implement :meth:`evaluate`."""

    epsilon: int
    domain: tuple[float, float]
    name: str

    def evaluate(self, s, order: int = 0) -> np.ndarray:
        raise NotImplementedError

    def derivatives(self, s: float, max_order: int = MAX_ORDER) -> np.ndarray:
        """Stacked ``gamma^(k)(s)`` for ``k = 0..max_order``, shape ``(max_order+1, 5)``."""
        return np.array([self.evaluate(s, k) for k in range(max_order + 1)])

    def jet(self, s: float, order: int = MAX_ORDER) -> Jet:
        return Jet.from_derivatives(self.derivatives(s, order))

    def check_domain(self, s) -> None:
        lo, hi = self.domain
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        s = np.asarray(s, dtype=float)
        if np.any(s < lo - slack) or np.any(s > hi + slack):
            raise OutOfDomain(f"s outside [{lo}, {hi}] for curve {self.name!r}")

    def default_samples(self, n: int = 1001) -> np.ndarray:
        lo, hi = self.domain
        return np.linspace(lo, hi, n)


@dataclass(frozen=True)
class ClosedFormCurve(Curve):
    basis: tuple[BasisFunction, ...]
    coefficients: np.ndarray
    epsilon: int = 1
    domain: tuple[float, float] = (0.0, 2 * math.pi)
    name: str = "closed-form"

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.shape != (len(self.basis), lorentz.DIM):
            raise ValueError(f"coefficients must have shape ({len(self.basis)}, 5), got {c.shape}")
        object.__setattr__(self, "coefficients", c)

    def evaluate(self, s, order: int = 0) -> np.ndarray:
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"derivative order must be in 0..{MAX_ORDER}")
        self.check_domain(s)
        s = np.asarray(s, dtype=float)
        vals = np.stack([f(s, order) for f in self.basis], axis=-1)
        return vals @ self.coefficients

    def with_domain(self, lo: float, hi: float) -> "ClosedFormCurve":
        return ClosedFormCurve(self.basis, self.coefficients, self.epsilon, (lo, hi), self.name)


@dataclass(frozen=True)
class SampledCurve(Curve):
    s0: float
    h: float
    points: np.ndarray
    epsilon: int = 1
    name: str = "sampled"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 2 or p.shape[1] != lorentz.DIM:
            raise ValueError(f"points must have shape (n, 5), got {p.shape}")
        if p.shape[0] < STENCIL_POINTS:
            raise TooFewSamples(f"need at least {STENCIL_POINTS} samples, got {p.shape[0]}")
        if not self.h > 0:
            raise ValueError("grid step must be positive")
        object.__setattr__(self, "points", p)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def domain(self) -> tuple[float, float]:
        return (self.s0, self.s0 + (self.n - 1) * self.h)

    @property
    def grid(self) -> np.ndarray:
        return self.s0 + self.h * np.arange(self.n)

    def stride(self, order: int) -> int:
        return max(1, math.ceil(SPACING_FLOOR[order] / self.h - 1e-9))

    def interior(self, max_order: int = MAX_ORDER) -> tuple[float, float]:
        """Sub-interval on which stencils up to ``max_order`` fit inside the grid."""
        reach = max(self.stride(k) for k in range(max_order + 1)) * (STENCIL_POINTS // 2)
        if 2 * reach >= self.n:
            raise InsufficientSamples("grid too short for the derivative stencils")
        lo, hi = self.domain
        return (lo + reach * self.h, hi - reach * self.h)

    def _weights(self, offset: float, order: int, stride: int) -> np.ndarray:
        key = (round(offset, 12), order, stride)
        w = self._cache.get(key)
        if w is None:
            half = STENCIL_POINTS // 2
            nodes = stride * np.arange(-half, half + 1, dtype=float)
            w = fd_weights(offset, nodes, order)[order]
            self._cache[key] = w
        return w

    def _evaluate_one(self, s: float, order: int) -> np.ndarray:
        u = (s - self.s0) / self.h
        centre = int(round(u))
        offset = u - centre
        if order == 0 and abs(offset) < 1e-9:
            return self.points[centre].copy()
        m = self.stride(order)
        half = STENCIL_POINTS // 2
        lo, hi = centre - half * m, centre + half * m
        if lo < 0 or hi >= self.n:
            raise InsufficientSamples(
                f"order-{order} stencil at s={s} needs samples {lo}..{hi} of 0..{self.n - 1}"
            )
        # weights are in units of the grid step
        w = self._weights(offset, order, m)
        return (w @ self.points[lo : hi + 1 : m]) / self.h**order

    def evaluate(self, s, order: int = 0) -> np.ndarray:
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"derivative order must be in 0..{MAX_ORDER}")
        self.check_domain(s)
        s_arr = np.asarray(s, dtype=float)
        if s_arr.ndim == 0:
            return self._evaluate_one(float(s_arr), order)
        return np.array([self._evaluate_one(float(x), order) for x in s_arr.ravel()]).reshape(
            s_arr.shape + (lorentz.DIM,)
        )

    def default_samples(self, n: int = 1001) -> np.ndarray:
        lo, hi = self.interior()
        return np.linspace(lo, hi, min(n, self.n))


def resample(curve: Curve, s0: float, s1: float, n: int) -> SampledCurve:
    """Sample ``curve`` on a uniform grid of ``n`` points over ``[s0, s1]``."""
    if n < STENCIL_POINTS:
        raise TooFewSamples(f"need n >= {STENCIL_POINTS}, got {n}")
    if not s1 > s0:
        raise ValueError("resample interval must be nondegenerate")
    curve.check_domain([s0, s1])
    grid = np.linspace(s0, s1, n)
    pts = curve.evaluate(grid, 0)
    return SampledCurve(s0, (s1 - s0) / (n - 1), pts, curve.epsilon, f"{curve.name}@sampled")


def evaluate(curve: Curve, s, order: int = 0) -> np.ndarray:
    return curve.evaluate(s, order)


def sphere_residual(curve: Curve, samples: Sequence[float]) -> float:
    """max |<gamma, gamma> - 1| over samples."""
    g = curve.evaluate(np.asarray(samples, dtype=float), 0)
    return float(np.max(np.abs(lorentz.inner(g, g) - 1.0)))


def speed_residual(curve: Curve, samples: Sequence[float]) -> float:
    """max |<gamma', gamma'> - epsilon| over samples."""
    t = curve.evaluate(np.asarray(samples, dtype=float), 1)
    return float(np.max(np.abs(lorentz.inner(t, t) - curve.epsilon)))


def write_csv(curve: SampledCurve | Curve, path, samples=None) -> None:
    """Store positions as ``s,x0,x1,x2,x3,x4`` rows with round-trip precision."""
    if samples is None:
        if not isinstance(curve, SampledCurve):
            raise ValueError("samples are required for closed-form curves")
        samples = curve.grid
    samples = np.asarray(samples, dtype=float)
    pts = curve.evaluate(samples, 0)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for s, p in zip(samples, pts):
            writer.writerow([repr(float(s))] + [repr(float(x)) for x in p])


def read_csv(path, epsilon: int | None = None, name: str | None = None) -> SampledCurve:
    """Load a uniformly sampled curve.

    ``epsilon`` is inferred from the sign of <gamma', gamma'> at the middle
    of the grid when not given.  Unit speed is not enforced.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != CSV_HEADER:
        raise ValueError(f"{path}: expected header {','.join(CSV_HEADER)}")
    try:
        data = np.array([[float(x) for x in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric entry ({exc})") from None
    if data.ndim != 2 or data.shape[1] != 6:
        raise ValueError(f"{path}: every row needs 6 columns")
    if data.shape[0] < STENCIL_POINTS:
        raise TooFewSamples(f"{path}: need at least {STENCIL_POINTS} rows, got {data.shape[0]}")
    s = data[:, 0]
    steps = np.diff(s)
    h = (s[-1] - s[0]) / (len(s) - 1)
    if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(h)) + 1e-12 * np.max(np.abs(s)):
        raise ValueError(f"{path}: samples must be on a uniform increasing grid")
    curve = SampledCurve(float(s[0]), float(h), data[:, 1:], 1, name or path.stem)
    if epsilon is None:
        mid = 0.5 * sum(curve.domain)
        t = curve.evaluate(mid, 1)
        epsilon = 1 if lorentz.inner(t, t) > 0 else -1
    return SampledCurve(float(s[0]), float(h), data[:, 1:], int(epsilon), name or path.stem)
