"""Command-line front end.

Every command prints a JSON envelope ``{command, schema_version, params,
results}`` to stdout; tabular data goes to CSV files. Exit codes: 0 success,
1 compute or I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import CZ, FAULT_TOLERANCE_TARGET, SingleMode, p_err, solve_threshold, sweep_error_surface
from .core import VarianceVector, db_from_variance, variance_from_db
from .gkp import SQRT_PI, GkpParams, gkp_density
from .ledger import run_single_mode_ledger
from .montecarlo import McConfig, mc_pipeline

SCHEMA_VERSION = "1.0"


class UsageError(Exception):
    pass


# -- JSON with 17 significant digits ----------------------------------------


def _dump(obj) -> str:
    if obj is None or isinstance(obj, bool):
        return "null" if obj is None else ("true" if obj else "false")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, ".17g") if math.isfinite(x) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{_dump(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def envelope(command: str, params: dict, results: dict) -> dict:
    return {
        "command": command,
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "params": params,
        "results": results,
    }


# -- argument types ----------------------------------------------------------


def _nonneg_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _probability(text: str) -> float:
    value = _finite(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return value


def _positive(text: str) -> float:
    value = _finite(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _gate(args) -> SingleMode | CZ:
    if args.gate == "cz":
        return CZ()
    return SingleMode(float(args.a), float(args.b))


def _squeezing(args) -> float:
    if args.variance is not None:
        return args.variance
    return variance_from_db(args.db)


# -- commands ----------------------------------------------------------------


def cmd_threshold(args) -> dict:
    gate = _gate(args)
    result = solve_threshold(gate, args.target)
    e_in = VarianceVector(2, 2) if args.gate == "cz" else VarianceVector(args.a, args.b)
    trace = run_single_mode_ledger(e_in)
    params = {"gate": args.gate, "a": str(args.a), "b": str(args.b), "target": args.target}
    results = result.to_json()
    results["final_variance"] = trace.final.to_json()
    results["final_variance_absolute"] = list(trace.final.scaled(result.variance_threshold))
    return envelope("threshold", params, results)


def cmd_ledger(args) -> dict:
    trace = run_single_mode_ledger(VarianceVector(args.a, args.b))
    return envelope("ledger", {"a": str(args.a), "b": str(args.b)}, trace.to_json())


def _grid(lo, hi, n, name):
    if n < 1:
        raise UsageError(f"{name} points must be >= 1")
    if hi < lo or (n > 1 and hi == lo):
        raise UsageError(f"{name} range must satisfy min < max")
    return np.linspace(lo, hi, n)


def cmd_sweep(args) -> dict:
    if args.db is not None:
        vs = [variance_from_db(d) for d in args.db]
    else:
        vs = list(args.variance)
    if not vs:
        raise UsageError("at least one squeezing level is required")
    if min(args.a_min, args.b_min) < 0:
        raise UsageError("a and b ranges must be non-negative")
    a = _grid(args.a_min, args.a_max, args.a_points, "a")
    b = _grid(args.b_min, args.b_max, args.b_points, "b")
    sweep = sweep_error_surface(a, b, vs, args.target)

    out = Path(args.out)
    surface_path = out.with_name(out.name + "_surface.csv")
    contour_path = out.with_name(out.name + "_contour.csv")
    with open(surface_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["a", "b", "v", "db", "p_err"])
        for i, v in enumerate(sweep.v_values):
            db = db_from_variance(v)
            for j, ai in enumerate(a):
                for k, bk in enumerate(b):
                    w.writerow([_num(ai), _num(bk), _num(v), _num(db), _num(sweep.surface[i, j, k])])
    with open(contour_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["v", "db", "a", "b_contour"])
        for i, v in enumerate(sweep.v_values):
            db = db_from_variance(v)
            for j, ai in enumerate(a):
                w.writerow([_num(v), _num(db), _num(ai), _num(sweep.contours[i, j])])

    params = {
        "a": [args.a_min, args.a_max, args.a_points],
        "b": [args.b_min, args.b_max, args.b_points],
        "v": list(sweep.v_values),
        "db": list(sweep.db_values),
        "target": args.target,
        "out": str(out),
    }
    results = {
        "surface_csv": str(surface_path),
        "contour_csv": str(contour_path),
        "contour_area": [sweep.contour_area(i) for i in range(len(vs))],
    }
    return envelope("sweep", params, results)


def cmd_montecarlo(args) -> dict:
    v = _squeezing(args)
    cfg = McConfig(samples=args.samples, seed=args.seed, v=v, gate=_gate(args), workers=args.workers)
    result = mc_pipeline(cfg)
    params = {
        "gate": args.gate,
        "a": str(args.a),
        "b": str(args.b),
        "v": v,
        "db": db_from_variance(v),
        "samples": args.samples,
        "seed": args.seed,
    }
    results = result.to_json()
    results["analytic_p_err_formula"] = p_err(cfg.gate, v)
    return envelope("montecarlo", params, results)


def cmd_gkp_profile(args) -> dict:
    try:
        p = GkpParams(args.alpha, args.delta, args.ae)
    except ValueError as exc:
        raise UsageError(str(exc))
    # default grid: envelope down to exp(-64), >= 4 points per peak width
    half = 8.0 / p.envelope_ae
    lo = -half if args.grid_min is None else args.grid_min
    hi = half if args.grid_max is None else args.grid_max
    points = args.points
    if points is None:
        points = int(math.ceil((hi - lo) / (0.25 * math.sqrt(p.delta_peak)))) + 1
    x = _grid(lo, hi, points, "grid")
    density = gkp_density(p, args.word, x)
    out = Path(args.out)
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "density"])
        for xi, di in zip(x, density):
            w.writerow([_num(xi), _num(di)])
    params = {
        "word": args.word,
        "alpha": p.alpha,
        "delta": p.delta_peak,
        "ae": p.envelope_ae,
        "grid_min": lo,
        "grid_max": hi,
        "points": points,
        "out": str(out),
    }
    results = {"csv": str(out), "trapezoid_integral": float(np.trapezoid(density, x))}
    return envelope("gkp-profile", params, results)


def _num(x) -> str:
    x = float(x)
    return format(x, ".17g") if math.isfinite(x) else "nan"


# -- parser ------------------------------------------------------------------


def _add_gate_args(p):
    p.add_argument("--gate", choices=["single", "cz"], default="single")
    p.add_argument("--a", type=_nonneg_fraction, default=Fraction(2))
    p.add_argument("--b", type=_nonneg_fraction, default=Fraction(2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkpthreshold",
        description="Squeezing thresholds for GKP-corrected Gaussian gates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="solve for the squeezing threshold")
    _add_gate_args(p)
    p.add_argument("--target", type=_probability, default=FAULT_TOLERANCE_TARGET)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("ledger", help="print the variance ledger of one corrected gate")
    p.add_argument("--a", type=_nonneg_fraction, default=Fraction(2))
    p.add_argument("--b", type=_nonneg_fraction, default=Fraction(2))
    p.set_defaults(func=cmd_ledger)

    p = sub.add_parser("sweep", help="tabulate P_err(a, b) and its level set")
    p.add_argument("--a-min", type=_finite, default=0.0)
    p.add_argument("--a-max", type=_finite, default=6.0)
    p.add_argument("--a-points", type=int, default=61)
    p.add_argument("--b-min", type=_finite, default=0.0)
    p.add_argument("--b-max", type=_finite, default=6.0)
    p.add_argument("--b-points", type=int, default=61)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--db", type=_finite, nargs="+")
    g.add_argument("--variance", type=_positive, nargs="+")
    p.add_argument("--target", type=_probability, default=FAULT_TOLERANCE_TARGET)
    p.add_argument("--out", required=True, help="path prefix for the two CSV files")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("montecarlo", help="sample the full correction pipeline")
    _add_gate_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--db", type=_finite)
    g.add_argument("--variance", type=_positive)
    p.add_argument("--samples", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("gkp-profile", help="write the position density of a finite GKP word")
    p.add_argument("--word", choices=["zero", "one", "0", "1"], default="zero")
    p.add_argument("--alpha", type=_positive, default=SQRT_PI)
    p.add_argument("--delta", type=_positive, default=1e-2)
    p.add_argument("--ae", type=_positive, default=None)
    p.add_argument("--grid-min", type=_finite, default=None)
    p.add_argument("--grid-max", type=_finite, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gkp_profile)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.func(args)
    except UsageError as exc:
        print(f"gkpthreshold {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"gkpthreshold {args.command}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(_dump(payload) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
