"""Truncated Taylor series of scalar and vector fields along a curve.

A :class:`Jet` stores normalized Taylor coefficients ``f^(k)(s)/k!`` for
``k = 0..order``.  Arithmetic follows the Cauchy product, so composite fields
such as ``N = (gamma'' + eps*gamma) / k1`` carry exact derivatives as long as
the input jet of the curve is exact.  Differentiation lowers the order by one.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from .lorentz import SIGNS


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def from_derivatives(cls, derivs) -> "Jet":
        d = np.asarray(derivs, dtype=float)
        scale = np.array([1.0 / factorial(k) for k in range(d.shape[0])])
        return cls(d * scale.reshape((-1,) + (1,) * (d.ndim - 1)))

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        value = np.asarray(value, dtype=float)
        c = np.zeros((order + 1,) + value.shape)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def value(self) -> np.ndarray:
        return self.c[0]

    def derivatives(self) -> np.ndarray:
        scale = np.array([float(factorial(k)) for k in range(self.order + 1)])
        return self.c * scale.reshape((-1,) + (1,) * (self.c.ndim - 1))

    def truncate(self, order: int) -> "Jet":
        return Jet(self.c[: order + 1])

    def d(self) -> "Jet":
        """Derivative d/ds; the result has one order less."""
        k = np.arange(1, self.order + 1, dtype=float)
        return Jet(self.c[1:] * k.reshape((-1,) + (1,) * (self.c.ndim - 1)))

    def _pair(self, other):
        if not isinstance(other, Jet):
            return self.c, None
        n = min(self.order, other.order) + 1
        return self.c[:n], other.c[:n]

    def __add__(self, other):
        a, b = self._pair(other)
        return Jet(a + (b if b is not None else other))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return Jet(a - (b if b is not None else other))

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * other)
        a, b = self._pair(other)
        # scalar series broadcast against vector series
        if a.ndim < b.ndim:
            a = a[:, None]
        elif b.ndim < a.ndim:
            b = b[:, None]
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
        for k in range(out.shape[0]):
            out[k] = sum(a[i] * b[k - i] for i in range(k + 1))
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / other)
        return self * other.reciprocal()

    def reciprocal(self) -> "Jet":
        a = self.c
        if np.any(a[0] == 0):
            raise ZeroDivisionError("reciprocal of a series with zero leading term")
        out = np.zeros_like(a)
        out[0] = 1.0 / a[0]
        for k in range(1, a.shape[0]):
            out[k] = -sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0]
        return Jet(out)

    def sqrt(self) -> "Jet":
        a = self.c
        out = np.zeros_like(a)
        out[0] = np.sqrt(a[0])
        for k in range(1, a.shape[0]):
            out[k] = (a[k] - sum(out[i] * out[k - i] for i in range(1, k))) / (2.0 * out[0])
        return Jet(out)

    def __repr__(self):
        return f"Jet(order={self.order}, value={self.value})"


def inner(u: Jet, v: Jet) -> Jet:
    """Scalar jet of the Lorentzian inner product of two vector jets."""
    n = min(u.order, v.order) + 1
    a, b = u.c[:n], v.c[:n]
    out = np.zeros(n)
    for k in range(n):
        out[k] = sum(np.sum(a[i] * b[k - i] * SIGNS) for i in range(k + 1))
    return Jet(out)
