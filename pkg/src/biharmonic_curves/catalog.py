"""Named closed-form curves with their expected Frenet data and verdicts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .biharmonic import Verdict
from .curve import ClosedFormCurve
from .odesolve import OdeSolution, preset_solution

FREE_PARAMETER = {"thm3.7-helix": "k1"}
DEFAULT_PARAMS = {"thm3.7-helix": {"k1": 0.5}}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict = field(default_factory=dict)
    solution: OdeSolution | None = None
    k1: float | None = None
    k2: float | None = None
    k3: float | None = None
    case: str | None = None
    verdict: Verdict = Verdict.NON_BIHARMONIC
    provenance: str = ""

    @property
    def domain(self) -> tuple[float, float]:
        return self.solution.default_domain()

    def curve(self, domain: tuple[float, float] | None = None) -> ClosedFormCurve:
        return self.solution.curve(domain)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "expected": {"k1": self.k1, "k2": self.k2, "k3": self.k3},
            "case": self.case,
            "verdict": self.verdict.value,
            "kind": self.solution.ode.kind.value,
            "domain": list(self.domain),
            "provenance": self.provenance,
        }

    def summary_line(self) -> str:
        def fmt(x):
            return "-" if x is None else f"{x:.9g}"
        params = ",".join(f"{k}={v:g}" for k, v in self.params.items()) or "-"
        return (
            f"{self.name:<16} params={params:<8} k1={fmt(self.k1):<12} k2={fmt(self.k2):<12} "
            f"k3={fmt(self.k3):<4} case={self.case or '-':<3} {self.provenance}"
        )


def _entry(name: str, k1_param: float | None) -> CatalogEntry:
    if name == "great-circle":
        return CatalogEntry(name, {}, preset_solution(name), 0.0, None, None, None, Verdict.GEODESIC,
                            "great circle (0, cos s, sin s, 0, 0): geodesic baseline")
    if name == "thm3.7-circle":
        return CatalogEntry(name, {}, preset_solution(name), 1.0, 0.0, 0.0, "I1", Verdict.CIRCLE,
                            "spacelike k1 = 1 branch: circle of radius 1/sqrt(2)")
    if name == "thm3.7-helix":
        k1 = DEFAULT_PARAMS[name]["k1"] if k1_param is None else float(k1_param)
        sol = preset_solution(name, k1)
        return CatalogEntry(name, {"k1": k1}, sol, k1, math.sqrt(1 - k1 * k1), 0.0, "I1", Verdict.HELIX,
                            "spacelike helix, frequencies sqrt(1-k1), sqrt(1+k1); k1^2+k2^2=1")
    if name == "prop3.8":
        return CatalogEntry(name, {}, preset_solution(name), 5.0, 2 * math.sqrt(6), 0.0, "I2", Verdict.HELIX,
                            "spacelike helix with timelike B1, a=2, b=sqrt(6); k1^2-k2^2=1")
    if name == "prop3.11-circle":
        return CatalogEntry(name, {}, preset_solution(name), 1.0, 0.0, 0.0, "II", Verdict.CIRCLE,
                            "timelike k1 = 1 solution with basis 1, s, exp(-+sqrt(2) s)")
    if name == "prop3.11-helix":
        return CatalogEntry(name, {}, preset_solution(name), 3.0, 2 * math.sqrt(2), 0.0, "II", Verdict.HELIX,
                            "timelike helix, a=2, b=sqrt(2); k1^2-k2^2=1")
    raise KeyError(f"unknown catalog entry {name!r}; choose from {NAMES}")


NAMES = ["great-circle", "thm3.7-circle", "thm3.7-helix", "prop3.8", "prop3.11-circle", "prop3.11-helix"]


def get_entry(name: str, params: dict | None = None) -> CatalogEntry:
    params = dict(params or {})
    allowed = {FREE_PARAMETER[name]} if name in FREE_PARAMETER else set()
    extra = set(params) - allowed
    if extra:
        raise ValueError(f"{name} takes no parameter(s) {sorted(extra)}")
    return _entry(name, params.get("k1"))


def make_catalog(k1: float | None = None) -> list[CatalogEntry]:
    return [_entry(n, k1 if n == "thm3.7-helix" else None) for n in NAMES]
