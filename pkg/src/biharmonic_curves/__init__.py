"""Biharmonic curves in the Lorentzian unit sphere S^4_1 of R^5_1.

Curves are sampled or given in closed form; the package extracts Frenet
frames, evaluates the bitension field and the biharmonicity constraints,
and solves the fourth-order ODEs whose solutions give explicit examples.
"""

from .biharmonic import (
    BiharmonicReport,
    Tolerances,
    Verdict,
    bitension,
    check_null_case_system,
    classify,
    classify_curvature_data,
)
from .catalog import CatalogEntry, get_entry, make_catalog
from .curvature import CurvatureOperator, conformal_C, curvature_R, quasi_conformal_C
from .curve import ClosedFormCurve, SampledCurve, read_csv, resample, write_csv
from .errors import *  # noqa: F403
from .frenet import CaseTag, FrenetApparatus, covariant_derivative, detect_case, frenet_apparatus
from .lorentz import CausalCharacter, causal_character, inner, normalize, orthonormalize
from .odesolve import (
    OdeKind,
    OdeSolution,
    QuarticOde,
    characteristic_roots,
    gram_constraints,
    preset_solution,
    solve_coefficients,
    verify_solution,
)
from .schemas import load_schema

__version__ = "0.1.0"
