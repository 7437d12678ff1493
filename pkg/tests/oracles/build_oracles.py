"""Regenerate the frozen reference values in ``oracles.json``.

Independent of the package: curves are re-typed here, Frenet data comes
from sympy's exact differentiation (evaluated to 30 digits), and Gram
targets come from a least-squares fit of <gamma, gamma> = 1 and
<gamma', gamma'> = eps on a dense grid.

    python3 tests/oracles/build_oracles.py
"""

import json
from pathlib import Path

import mpmath
import numpy as np
import sympy as sp

from gridfit import gram_fit

mpmath.mp.dps = 30

s = sp.Symbol("s", real=True)
SIGNS = (-1, 1, 1, 1, 1)
SQ2, SQ7 = sp.sqrt(2), sp.sqrt(7)


def ip(u, v):
    return sum(g * a * b for g, a, b in zip(SIGNS, u, v))


def curve_from(coeffs, funcs):
    return [sum(c[i] * f for c, f in zip(coeffs, funcs)) for i in range(5)]


def frenet_oracle(gamma, eps, points):
    """k1, k2, |tau2| (Euclidean) at each point, 30-digit evaluation."""
    d = lambda v: [sp.diff(x, s) for x in v]
    nab = lambda v: [a + ip(t, v) * g for a, g in zip(d(v), gamma)]
    t = d(gamma)
    x1 = nab(t)
    x2 = nab(x1)
    x3 = nab(x2)
    fns = {k: [sp.lambdify(s, x, "mpmath") for x in v]
           for k, v in {"g": gamma, "t": t, "x1": x1, "x2": x2, "x3": x3}.items()}
    out = []
    for p in points:
        p = mpmath.mpf(p.p) / p.q
        gv, tv, x1v, x2v, x3v = ([mpmath.mpf(f(p)) for f in fns[k]] for k in ("g", "t", "x1", "x2", "x3"))
        q1 = ip(x1v, x1v)
        k1 = mpmath.sqrt(abs(q1))
        e_n = 1 if q1 > 0 else -1
        # nabla N = x2/k1 - k1' x1/k1^2 with k1' = e_n <x1, x2> / k1
        k1p = ip(x1v, x2v) * e_n / k1
        w = [a / k1 - k1p * b / k1**2 + eps * e_n * k1 * c for a, b, c in zip(x2v, x1v, tv)]
        k2 = mpmath.sqrt(abs(ip(w, w)))
        r = [ip(x1v, tv) * a - ip(tv, tv) * b for a, b in zip(tv, x1v)]
        res = mpmath.sqrt(sum((a - b) ** 2 for a, b in zip(x3v, r)))
        out.append({"s": float(p), "k1": float(k1), "k2": float(k2), "tau2_euclidean": float(res),
                    "on_sphere": float(abs(ip(gv, gv) - 1)), "speed": float(abs(ip(tv, tv) - eps))})
    return out


def curves():
    e = lambda i: [1 if j == i else 0 for j in range(5)]
    out = {}
    for k1 in (sp.Rational(1, 5), sp.Rational(1, 2), sp.Rational(4, 5), sp.Rational(3, 5)):
        a, b = sp.sqrt(1 - k1), sp.sqrt(1 + k1)
        cs = [[x / SQ2 for x in e(i)] for i in (1, 2, 3, 4)]
        out[f"helix_k1={float(k1)}"] = (curve_from(cs, [sp.cos(a * s), sp.sin(a * s), sp.cos(b * s), sp.sin(b * s)]), 1)
    cs = [[x / SQ2 for x in e(3)], [0] * 5, [x / SQ2 for x in e(1)], [x / SQ2 for x in e(2)]]
    out["circle_spacelike"] = (curve_from(cs, [1, s, sp.cos(SQ2 * s), sp.sin(SQ2 * s)]), 1)
    c = [[1, 0, 0, 0, 1], [-1, SQ7 / 4, 0, 0, -sp.Rational(3, 4)], [0, 0, sp.Rational(1, 2), sp.Rational(1, 2), 0],
         [-SQ7 / SQ2, 1 / SQ2, 0, 0, -SQ7 / SQ2]]
    out["exp_helix_spacelike"] = (curve_from(c, [sp.exp(2 * s), sp.exp(-2 * s), sp.cos(sp.sqrt(6) * s), sp.sin(sp.sqrt(6) * s)]), 1)
    out["exp_helix_timelike"] = (curve_from(c, [sp.exp(2 * s), sp.exp(-2 * s), sp.cos(SQ2 * s), sp.sin(SQ2 * s)]), -1)
    c = [[1 / SQ2, 0, 0, 0, 1], [0] * 5, [-1, 1 / SQ2, 0, 0, -1 / SQ2], [1, -SQ2 / 4, 1 / (2 * SQ2), sp.Rational(1, 2), 1 / SQ2]]
    out["circle_timelike"] = (curve_from(c, [1, s, sp.exp(-SQ2 * s), sp.exp(SQ2 * s)]), -1)
    # unequal radii: constant k1, k2 but k1^2 + k2^2 != 1
    bb = sp.sqrt(sp.Rational(91, 64))
    out["probe_unequal_radii"] = ([0, sp.Rational(3, 5) * sp.cos(s / 2), sp.Rational(3, 5) * sp.sin(s / 2),
                                   sp.Rational(4, 5) * sp.cos(bb * s), sp.Rational(4, 5) * sp.sin(bb * s)], 1)
    return out


def gram_cases():
    cos = lambda w: (lambda x: np.cos(w * x), lambda x: -w * np.sin(w * x))
    sin = lambda w: (lambda x: np.sin(w * x), lambda x: w * np.cos(w * x))
    ex = lambda w: (lambda x: np.exp(w * x), lambda x: w * np.exp(w * x))
    one = (lambda x: 1.0, lambda x: 0.0)
    lin = (lambda x: x, lambda x: 1.0)
    r2, r6 = np.sqrt(2), np.sqrt(6)
    osc, exp_grid = np.linspace(0, 2 * np.pi, 157), np.linspace(-1, 1, 101)
    cases = {
        "SpacelikeSS k1=0.5": ([cos(np.sqrt(.5)), sin(np.sqrt(.5)), cos(np.sqrt(1.5)), sin(np.sqrt(1.5))], 1, osc),
        "SpacelikeSS k1=1": ([one, lin, cos(r2), sin(r2)], 1, osc),
        "SpacelikeST k1=5": ([ex(2.0), ex(-2.0), cos(r6), sin(r6)], 1, exp_grid),
        "Timelike k1=3": ([ex(2.0), ex(-2.0), cos(r2), sin(r2)], -1, exp_grid),
        "Timelike k1=1": ([one, lin, ex(-r2), ex(r2)], -1, exp_grid),
    }
    return {k: dict(zip(("gram", "rank", "residual"), (g.tolist(), r, res)))
            for k, (f, e, grid) in cases.items() for g, r, res in [gram_fit(f, e, grid)]}


def main():
    pts = [sp.Rational(-1, 2), sp.Rational(0), sp.Rational(3, 10)]
    data = {"frenet": {name: {"epsilon": eps, "points": frenet_oracle(g, eps, pts)}
                       for name, (g, eps) in curves().items()},
            "gram": gram_cases()}
    path = Path(__file__).with_name("oracles.json")
    path.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
