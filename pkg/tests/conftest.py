import json
import math
from pathlib import Path

import numpy as np
import pytest

from biharmonic_curves import expoly
from biharmonic_curves.curve import ClosedFormCurve

ORACLES = json.loads((Path(__file__).parent / "oracles" / "oracles.json").read_text())


@pytest.fixture(scope="session")
def oracles():
    return ORACLES


def unequal_radii_curve() -> ClosedFormCurve:
    """Two circles of radii 0.6, 0.8 at frequencies 0.5 and sqrt(0.91)/0.8.

    Unit speed and constant k1, k2, but k1^2 + k2^2 != 1.
    """
    b = math.sqrt(0.91 / 0.64)
    basis = (expoly.cosine(0.5), expoly.sine(0.5), expoly.cosine(b), expoly.sine(b))
    c = np.zeros((4, 5))
    c[0, 1] = c[1, 2] = 0.6
    c[2, 3] = c[3, 4] = 0.8
    return ClosedFormCurve(basis, c, 1, (0.0, 2 * math.pi), "unequal-radii")


def spacelike_hyperbola(r: float = 0.5) -> ClosedFormCurve:
    """(r cosh(s/r), r sinh(s/r), 0, 0, sqrt(1+r^2)): spacelike with timelike normal."""
    w = 1.0 / r
    basis = (expoly.exponential(w), expoly.exponential(-w), expoly.constant())
    c = np.zeros((3, 5))
    c[0, 0], c[0, 1] = r / 2, r / 2
    c[1, 0], c[1, 1] = r / 2, -r / 2
    c[2, 4] = math.sqrt(1 + r * r)
    return ClosedFormCurve(basis, c, 1, (-1.0, 1.0), "hyperbola")


def null_drift_circle() -> ClosedFormCurve:
    """k1 = 1 circle plus s * (null vector in the radical): W = 2 c2 is null."""
    r = 1 / math.sqrt(2)
    basis = (expoly.constant(), expoly.linear(), expoly.cosine(math.sqrt(2)), expoly.sine(math.sqrt(2)))
    c = np.array([[0, 0, 0, r, 0], [0.3, 0, 0, 0, 0.3], [0, r, 0, 0, 0], [0, 0, r, 0, 0]])
    return ClosedFormCurve(basis, c, 1, (0.0, 2 * math.pi), "null-drift")
