"""Exponential polynomials: finite sums of ``coef * s**p * exp(rate * s)``.

Every basis function of the constant-coefficient ODEs handled here (1, s,
cos, sin, real exponentials and their products with s) is such a sum with
complex rates.  Functions ``s**p exp(rate s)`` with distinct ``(p, rate)`` are
linearly independent, which is what the Gram-constraint derivation relies on.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

RATE_DIGITS = 10


@dataclass(frozen=True)
class Term:
    coef: complex
    power: int
    rate: complex

    def derivative(self, order: int = 1) -> list["Term"]:
        out = []
        for j in range(min(order, self.power) + 1):
            lam = self.rate ** (order - j) if order - j else 1.0
            c = self.coef * comb(order, j) * factorial(self.power) / factorial(self.power - j) * lam
            if c != 0:
                out.append(Term(complex(c), self.power - j, self.rate))
        return out

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.coef * other.coef, self.power + other.power, self.rate + other.rate)

    def key(self) -> tuple:
        r = complex(self.rate)
        return (self.power, round(r.real, RATE_DIGITS) + 0.0, round(r.imag, RATE_DIGITS) + 0.0)


def derivative(terms, order: int = 1) -> list[Term]:
    return [d for t in terms for d in t.derivative(order)]


def product(a, b) -> list[Term]:
    return [x * y for x in a for y in b]


def collect(terms) -> dict[tuple, complex]:
    """Sum coefficients of like terms; drops exact cancellations."""
    acc: dict[tuple, complex] = defaultdict(complex)
    for t in terms:
        acc[t.key()] += t.coef
    return {k: v for k, v in acc.items() if abs(v) > 1e-13}


def evaluate_terms(terms, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    total = np.zeros(s.shape, dtype=complex)
    for t in terms:
        total = total + t.coef * s**t.power * np.exp(t.rate * s)
    return total.real


@dataclass(frozen=True)
class BasisFunction:
    """A named real-valued exponential polynomial with exact derivatives."""

    label: str
    terms: tuple[Term, ...]

    def __call__(self, s, order: int = 0):
        return evaluate_terms(derivative(self.terms, order) if order else self.terms, s)

    def derivative_terms(self, order: int) -> list[Term]:
        return derivative(self.terms, order) if order else list(self.terms)


def _fmt(w: float) -> str:
    return f"{w:.12g}"


def constant() -> BasisFunction:
    return BasisFunction("1", (Term(1.0, 0, 0j),))


def linear() -> BasisFunction:
    return BasisFunction("s", (Term(1.0, 1, 0j),))


def cosine(w: float) -> BasisFunction:
    return BasisFunction(f"cos({_fmt(w)}*s)", (Term(0.5, 0, 1j * w), Term(0.5, 0, -1j * w)))


def sine(w: float) -> BasisFunction:
    return BasisFunction(f"sin({_fmt(w)}*s)", (Term(-0.5j, 0, 1j * w), Term(0.5j, 0, -1j * w)))


def exponential(w: float) -> BasisFunction:
    return BasisFunction(f"exp({_fmt(w)}*s)", (Term(1.0, 0, complex(w)),))


def times_s(f: BasisFunction) -> BasisFunction:
    return BasisFunction(f"s*{f.label}", tuple(Term(t.coef, t.power + 1, t.rate) for t in f.terms))
