"""Algebraic curvature tensors on an orthonormal basis of a Lorentzian space.

Component convention: ``R[i, j, k, l]`` is the ``e_l`` component of
``R(e_i, e_j) e_k``; the metric is ``diag(signs)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lorentz
from .errors import DimensionTooSmall, InvalidCoefficients


@dataclass(frozen=True)
class CurvatureOperator:
    """``R(X,Y)Z = c (<Y,Z> X - <X,Z> Y)`` on R^5_1 vectors."""

    c: float = 1.0

    def __call__(self, x, y, z) -> np.ndarray:
        return curvature_R(self, x, y, z)


def curvature_R(op: CurvatureOperator, x, y, z) -> np.ndarray:
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    yz = lorentz.inner(y, z)[..., None]
    xz = lorentz.inner(x, z)[..., None]
    return op.c * (yz * x - xz * y)


def constant_curvature_tensor(signs, c: float = 1.0) -> np.ndarray:
    """Components of ``c (g(Y,Z) X - g(X,Z) Y)`` on a basis with Gram ``diag(signs)``."""
    g = np.diag(np.asarray(signs, dtype=float))
    eye = np.eye(len(g))
    return c * (np.einsum("jk,il->ijkl", g, eye) - np.einsum("ik,jl->ijkl", g, eye))


def ricci(r_data: np.ndarray) -> np.ndarray:
    """``S(Y, Z) = trace(X -> R(X, Y) Z)``."""
    return np.einsum("ijki->jk", r_data)


def _parts(r_data, signs):
    r_data = np.asarray(r_data, dtype=float)
    g = np.diag(np.asarray(signs, dtype=float))
    n = len(g)
    if r_data.shape != (n,) * 4:
        raise ValueError(f"R_data must have shape {(n,) * 4}, got {r_data.shape}")
    s = ricci(r_data)
    # Q X has components S(X, e_l) g^{ll}
    q = s * np.asarray(signs, dtype=float)[None, :]
    scalar = float(np.trace(q))
    eye = np.eye(n)
    kn_g = np.einsum("jk,il->ijkl", g, eye) - np.einsum("ik,jl->ijkl", g, eye)
    g_q = np.einsum("jk,il->ijkl", g, q) - np.einsum("ik,jl->ijkl", g, q)
    s_id = np.einsum("jk,il->ijkl", s, eye) - np.einsum("ik,jl->ijkl", s, eye)
    return r_data, n, scalar, kn_g, g_q, s_id


def conformal_C(dim: int, r_data, metric_signs) -> np.ndarray:
    """Conformal curvature tensor, components in the same convention as ``r_data``."""
    if dim < 4:
        raise DimensionTooSmall(f"conformal curvature tensor needs dim >= 4, got {dim}")
    if len(metric_signs) != dim:
        raise ValueError("metric_signs must have length dim")
    r, n, scalar, kn_g, g_q, s_id = _parts(r_data, metric_signs)
    return r - (g_q + s_id) / (n - 2) + scalar / ((n - 1) * (n - 2)) * kn_g


def quasi_conformal_C(dim: int, r_data, metric_signs, a: float, b: float) -> np.ndarray:
    """Quasi-conformal curvature tensor; requires ``a * b != 0``."""
    if a * b == 0:
        raise InvalidCoefficients(f"quasi-conformal tensor needs a*b != 0, got a={a}, b={b}")
    if dim < 4:
        raise DimensionTooSmall(f"quasi-conformal curvature tensor needs dim >= 4, got {dim}")
    if len(metric_signs) != dim:
        raise ValueError("metric_signs must have length dim")
    r, n, scalar, kn_g, g_q, s_id = _parts(r_data, metric_signs)
    return a * r + b * (s_id + g_q) - scalar / n * (a / (n - 1) + 2 * b) * kn_g
