"""Command-line front end: ``biharmonic-curves <command> ...``.

Commands: ``catalog``, ``classify``, ``verify``, ``sweep``, ``solve``.
Exit status: 0 success, 2 usage, 3 input parse, 4 numerical failure, 5 internal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import biharmonic, catalog, curve as curve_mod, odesolve
from .errors import GeometryError, NotRealizable, NumericalFailure, OutOfDomain, TooFewSamples

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERICAL, EXIT_INTERNAL = 0, 2, 3, 4, 5
DEFAULT_SAMPLES = 1001
VERIFY_TOL = 1e-6
VERIFY_HEADER = ["check", "value", "tolerance", "pass"]
SWEEP_HEADER = ["param", "k1", "k2", "identity_residual", "bitension_residual"]


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    source: str | None = None
    params: dict = field(default_factory=dict)
    samples: int = DEFAULT_SAMPLES
    interval: tuple[float, float] | None = None
    tolerances: biharmonic.Tolerances = field(default_factory=biharmonic.Tolerances)
    fmt: str = "json"
    output: str | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.samples < curve_mod.STENCIL_POINTS:
            raise TooFewSamples(f"--samples must be >= {curve_mod.STENCIL_POINTS}, got {self.samples}")
        if self.interval is not None and not self.interval[1] > self.interval[0]:
            raise UsageError(f"--interval must satisfy a < b, got {self.interval}")


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects name=value, got {item!r}")
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise UsageError(f"--param {key}: not a number: {val!r}") from None
    return out


def _positive(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return val


def _tolerances(args) -> biharmonic.Tolerances:
    over = {}
    if getattr(args, "tol_null", None) is not None:
        over["null"] = args.tol_null
    if getattr(args, "tol_residual", None) is not None:
        over["residual"] = args.tol_residual
    return biharmonic.Tolerances(**over)


def _config(args, source: str | None, fmt: str) -> RunConfig:
    return RunConfig(
        command=args.command,
        source=source,
        params=_parse_params(getattr(args, "param", None)),
        samples=args.samples,
        interval=tuple(args.interval) if getattr(args, "interval", None) else None,
        tolerances=_tolerances(args),
        fmt=args.format or fmt,
        output=args.output,
        seed=getattr(args, "seed", None),
    )


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _entry(cfg: RunConfig) -> catalog.CatalogEntry:
    if cfg.source not in catalog.NAMES:
        raise UsageError(f"unknown catalog entry {cfg.source!r}; choose from {', '.join(catalog.NAMES)}")
    try:
        return catalog.get_entry(cfg.source, cfg.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _samples(cfg: RunConfig, c: curve_mod.Curve) -> np.ndarray:
    lo, hi = cfg.interval or c.domain
    return np.linspace(lo, hi, cfg.samples)


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(cfg: RunConfig) -> int:
    entries = catalog.make_catalog(cfg.params.get("k1"))
    if cfg.fmt == "json":
        text = json.dumps([e.to_json() for e in entries], indent=2) + "\n"
    else:
        text = "".join(e.summary_line() + "\n" for e in entries)
    _emit(text, cfg.output)
    return EXIT_OK


def _load_curve(cfg: RunConfig) -> curve_mod.Curve:
    if cfg.source is None:
        raise UsageError("give --catalog NAME or --input FILE")
    if cfg.source.startswith("file:"):
        path = cfg.source[5:]
        try:
            return curve_mod.read_csv(path)
        except TooFewSamples:
            raise
        except (OSError, ValueError) as exc:
            raise InputError(f"reading {path}: {exc}") from None
    entry = _entry(cfg)
    return entry.curve(cfg.interval)


def cmd_classify(cfg: RunConfig) -> int:
    c = _load_curve(cfg)
    if isinstance(c, curve_mod.SampledCurve):
        lo, hi = c.interior()
        if cfg.interval:
            lo, hi = max(lo, cfg.interval[0]), min(hi, cfg.interval[1])
        samples = np.linspace(lo, hi, min(cfg.samples, c.n))
    else:
        samples = _samples(cfg, c)
    rep = biharmonic.classify(c, samples, cfg.tolerances)
    if cfg.fmt == "json":
        text = json.dumps(rep.to_json(), indent=2) + "\n"
    else:
        rows = [["verdict", rep.verdict.value], ["case", rep.case or ""],
                ["residual_sup", repr(rep.residual_sup)],
                ["residual_sup_euclidean", repr(rep.residual_sup_euclidean)]]
        rows += [[k, repr(v)] for k, v in rep.constraints.items()]
        text = _csv_text(["field", "value"], rows)
    _emit(text, cfg.output)
    return EXIT_OK


def _verify_rows(entry: catalog.CatalogEntry, c: curve_mod.Curve, samples: np.ndarray,
                 tol: biharmonic.Tolerances) -> list[tuple[str, float, float]]:
    sol = entry.solution
    rep = odesolve.verify_solution(sol, grid=samples)
    rows = [
        ("on_sphere", rep.sphere_residual, odesolve.CONSTRAINT_TOL),
        ("unit_speed", rep.speed_residual, odesolve.CONSTRAINT_TOL),
        ("ode_residual", rep.ode_residual, odesolve.ODE_TOL),
        ("rk_cross_check", rep.rk_error, odesolve.RK_TOL),
    ]
    cls = biharmonic.classify(c, samples, tol)
    rows.append(("bitension_residual", cls.residual_sup_euclidean, min(VERIFY_TOL, tol.residual)))
    if cls.verdict is biharmonic.Verdict.GEODESIC:
        rows.append(("tension", cls.constraints["k1_max"], tol.geodesic))
    else:
        cons = cls.constraints
        rows.append(("k1_constancy", cons.get("k1_defect", math.inf), tol.constancy))
        rows.append(("k2_constancy", cons.get("k2_defect", math.inf), tol.constancy))
        rows.append(("case_identity", cons.get("identity_abs_max", math.inf), VERIFY_TOL))
        if entry.k1 is not None:
            rows.append(("k1_expected", abs(cons.get("k1_mean", math.inf) - entry.k1), VERIFY_TOL))
        if entry.k2 is not None:
            rows.append(("k2_expected", abs(cons.get("k2_mean", math.inf) - entry.k2), VERIFY_TOL))
    rows.append(("verdict_expected", 0.0 if cls.verdict is entry.verdict else 1.0, 0.5))
    return rows


def cmd_verify(cfg: RunConfig) -> int:
    entry = _entry(cfg)
    c = entry.curve(cfg.interval)
    rows = _verify_rows(entry, c, _samples(cfg, c), cfg.tolerances)
    if cfg.fmt == "json":
        text = json.dumps([{"check": n, "value": v, "tolerance": t, "pass": bool(v < t)} for n, v, t in rows],
                          indent=2) + "\n"
    else:
        text = _csv_text(VERIFY_HEADER, [[n, repr(float(v)), repr(t), str(bool(v < t)).lower()] for n, v, t in rows])
    _emit(text, cfg.output)
    return EXIT_OK


def sweep_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid; empty when ``stop < start``."""
    if not step > 0:
        raise UsageError("--range step must be > 0")
    if stop < start:
        return np.array([])
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(n), 12)


def cmd_sweep(cfg: RunConfig, values: np.ndarray) -> int:
    if cfg.source not in catalog.FREE_PARAMETER:
        raise UsageError(f"sweep needs a family with a free parameter: {sorted(catalog.FREE_PARAMETER)}")
    if values.size == 0:
        raise UsageError("sweep grid is empty")
    name = catalog.FREE_PARAMETER[cfg.source]
    rows = []
    for v in values:
        try:
            entry = catalog.get_entry(cfg.source, {name: float(v)})
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        c = entry.curve(cfg.interval)
        rep = biharmonic.classify(c, _samples(cfg, c), cfg.tolerances)
        cons = rep.constraints
        rows.append([repr(float(v)), repr(cons.get("k1_mean", math.nan)), repr(cons.get("k2_mean", math.nan)),
                     repr(cons.get("identity_abs_max", math.nan)), repr(rep.residual_sup_euclidean)])
    _emit(_csv_text(SWEEP_HEADER, rows), cfg.output)
    return EXIT_OK


def cmd_solve(cfg: RunConfig, kind: str, k1: float) -> int:
    try:
        ode = odesolve.QuarticOde(odesolve.OdeKind(kind), k1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sol = odesolve.solve_coefficients(ode, seed=cfg.seed)
    grid = np.linspace(*(cfg.interval or sol.default_domain()), cfg.samples)
    rep = odesolve.verify_solution(sol, grid=grid)
    out = odesolve.solution_to_json(sol, rep)
    out["target_gram"] = odesolve.gram_constraints(ode, sol.basis).matrix.tolist()
    out["passed"] = rep.ok
    _emit(json.dumps(out, indent=2) + "\n", cfg.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, fmt_default: str) -> None:
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="sample count (>= 9)")
    p.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"), help="parameter interval")
    p.add_argument("--format", choices=["json", "csv"], default=None, help=f"output format (default {fmt_default})")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--tol-null", type=_positive, help="null-vector tolerance")
    p.add_argument("--tol-residual", type=_positive, help="bitension residual tolerance")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="family parameter, e.g. k1=0.5")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biharmonic-curves", description="Biharmonic curves in the Lorentzian 4-sphere.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="list the built-in closed-form curves")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--output", "-o")

    p = sub.add_parser("classify", help="classify a catalog curve or a sampled CSV curve")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", "--preset", dest="catalog", metavar="NAME")
    src.add_argument("--input", metavar="CSV", help="columns s,x0,x1,x2,x3,x4 on a uniform grid")
    _common(p, "json")

    p = sub.add_parser("verify", help="residual table for a catalog curve")
    p.add_argument("--preset", "--catalog", dest="catalog", metavar="NAME", required=True)
    _common(p, "csv")

    p = sub.add_parser("sweep", help="measure a one-parameter family over a grid")
    p.add_argument("--family", "--catalog", dest="catalog", default="thm3.7-helix", metavar="NAME")
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--range", type=float, nargs=3, metavar=("START", "STOP", "STEP"))
    grid.add_argument("--values", type=float, nargs="*")
    _common(p, "csv")

    p = sub.add_parser("solve", help="solve the quartic ODE and realize the Gram constraints")
    p.add_argument("--kind", required=True, choices=[k.value for k in odesolve.OdeKind])
    p.add_argument("--k1", type=float, required=True)
    p.add_argument("--seed", type=int, help="random Lorentz transformation seed")
    _common(p, "json")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        cfg = RunConfig("catalog", params=_parse_params(args.param), fmt="json" if args.json else "csv",
                        output=args.output)
        return cmd_catalog(cfg)
    if args.command == "classify":
        source = f"file:{args.input}" if args.input else args.catalog
        return cmd_classify(_config(args, source, "json"))
    if args.command == "verify":
        return cmd_verify(_config(args, args.catalog, "csv"))
    if args.command == "sweep":
        values = sweep_grid(*args.range) if args.range else np.asarray(args.values or [], dtype=float)
        return cmd_sweep(_config(args, args.catalog, "csv"), values)
    if args.command == "solve":
        return cmd_solve(_config(args, None, "json"), args.kind, args.k1)
    raise UsageError(f"unknown command {args.command}")


def main(argv=None) -> int:
    try:
        return run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TooFewSamples, OutOfDomain) as exc:
        print(f"usage error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NumericalFailure, NotRealizable) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GeometryError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
