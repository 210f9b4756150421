"""Command-line front end producing reproducible CSV/JSON artifacts.

Subcommands::

    solve       solve the gap equation at one (u, t)
    sweep       gap vs asymptotic form over a coupling grid
    dos         density-of-states table with the singular expansion
    constants   every derived constant with deviation diagnostics
    regularize  moment pair J1/J2 table plus Laurent fits
    ratio       gap-to-transition-temperature ratio expansion table

Exit codes: 0 success, 2 input validation, 3 numerical non-convergence.
CSV output is RFC-4180 style with a header row, LF line endings, and
every numeric cell printed with 12 significant digits; JSON output keeps
Python's shortest round-trip float form.  Identical arguments (including
--seed) produce byte-identical files.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .dos import (DEFAULT_MC_SEED, QuadratureConfig, dos_asymptotic,
                  dos_moment, dos_moment_exact, dos_value)
from .errors import ConvergenceError, DomainError
from .gap import GapParams, asymptotic_comparison, delta_asymptotic, gap_solve
from .renorm import (EULER_GAMMA, a0_numeric, a1_constant, b1_constant,
                     constants_report, fit_laurent, gap_ratio_expansion,
                     j2_closed, mellin_difference, neel_asymptotic,
                     richardson_extrapolate, sech_log2_integral)


@dataclass
class RunConfig:
    """Parsed invocation: command, numerics, and output routing."""

    command: str
    quadrature: QuadratureConfig
    output_format: str = "csv"
    output_path: str = None
    seed: int = DEFAULT_MC_SEED
    options: dict = field(default_factory=dict)


def _fmt(value):
    """One numeric cell: 12 significant digits, plain ints untouched."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".12g")


def _write_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(rows[0].keys())
    for row in rows:
        writer.writerow(_fmt(v) for v in row.values())


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _emit(payload, rows, run):
    out = io.StringIO()
    if run.output_format == "json":
        json.dump(_jsonable(payload), out, indent=2)
        out.write("\n")
    else:
        _write_csv(rows, out)
    text = out.getvalue()
    if run.output_path:
        with open(run.output_path, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _parse_positive_list(raw, what):
    try:
        values = [float(token) for token in raw.split(",") if token.strip()]
    except ValueError as exc:
        raise DomainError(f"could not parse {what} list: {exc}") from exc
    if not values:
        raise DomainError(f"{what} list must be non-empty")
    if any(not v > 0 for v in values):
        raise DomainError(f"{what} values must be positive")
    return values


def _solve_record(u, t, cfg):
    solution = gap_solve(GapParams(u=u, t=t), cfg)
    asym = t * delta_asymptotic(u / t)
    return {
        "u": u,
        "t": t,
        "delta": solution.delta,
        "residual": solution.residual,
        "bracket_low": solution.bracket[0],
        "bracket_high": solution.bracket[1],
        "evaluations": solution.evaluations,
        "delta_asymptotic": asym,
        "rel_dev": abs(solution.delta / asym - 1.0),
    }


def cmd_solve(run):
    record = _solve_record(run.options["u"], run.options["t"], run.quadrature)
    _emit(record, [record], run)


def cmd_sweep(run):
    u_min, u_max = run.options["u_min"], run.options["u_max"]
    points = run.options["points"]
    if points < 1:
        raise DomainError("points must be positive")
    if not 0 < u_min <= u_max:
        raise DomainError("need 0 < u_min <= u_max")
    if run.options["log_spacing"]:
        grid = np.geomspace(u_min, u_max, points)
    else:
        grid = np.linspace(u_min, u_max, points)
    rows = []
    for u in grid:
        comp = asymptotic_comparison(float(u), run.quadrature)
        rows.append({
            "u": comp.u,
            "delta_numeric": comp.delta_numeric,
            "delta_asymptotic": comp.delta_asymptotic,
            "rel_dev": comp.rel_dev,
            "bound_scale": comp.bound_scale,
        })
    _emit({"rows": rows}, rows, run)


def cmd_dos(run):
    points = run.options["points"]
    eps_min, eps_max = run.options["eps_min"], run.options["eps_max"]
    if points < 1:
        raise DomainError("points must be positive")
    if not 0 < eps_min <= eps_max:
        raise DomainError("need 0 < eps_min <= eps_max")
    rows = []
    for eps in np.linspace(eps_min, eps_max, points):
        eps = float(eps)
        n0 = dos_value(eps, run.quadrature)
        if 0.0 < eps < 4.0:
            n0_asym = dos_asymptotic(eps)
            diff = abs(n0 - n0_asym)
        else:
            n0_asym = math.nan
            diff = math.nan
        scale = eps ** 4 * math.log(1.0 / eps) if eps < 1.0 else math.nan
        rows.append({
            "epsilon": eps,
            "n0": n0,
            "n0_asymptotic": n0_asym,
            "abs_diff": diff,
            "scaled_remainder": diff / scale if scale and scale > 0 else math.nan,
        })
    _emit({"rows": rows}, rows, run)


def cmd_constants(run):
    report = constants_report(run.quadrature)
    record = {
        "a0_numeric": report.a0_numeric,
        "a0_exact": report.a0_exact,
        "b1": report.b1,
        "a1": report.a1,
        "sech_integral": report.sech_integral,
        "gap_ratio_leading": report.gap_ratio_leading,
        "gap_ratio_slope": report.gap_ratio_slope,
        "seed": run.seed,
    }
    payload = dict(record)
    payload["deviations"] = dict(report.deviations)
    flat = dict(record)
    for key, value in report.deviations.items():
        flat[f"deviation_{key}"] = value
    _emit(payload, [flat], run)


def cmd_regularize(run):
    s_values = sorted(set(_parse_positive_list(run.options["s_values"], "s")),
                      reverse=True)
    rows = []
    for s in s_values:
        j1 = dos_moment(s, run.quadrature)
        j2 = j2_closed(s)
        rows.append({
            "s": s,
            "j1_numeric": j1,
            "j1_exact": dos_moment_exact(s),
            "j2_closed": j2,
            "difference": mellin_difference(s, run.quadrature),
        })
    diffs = [row["difference"] for row in rows]
    j1_fit = fit_laurent(s_values, [row["j1_numeric"] for row in rows])
    diff_fit = fit_laurent(s_values, diffs)
    payload = {
        "rows": rows,
        "j1_fit": {"c_m2": j1_fit.c_m2, "c_m1": j1_fit.c_m1,
                   "c_0": j1_fit.c_0, "fit_residual": j1_fit.fit_residual},
        "difference_fit": {"c_m2": diff_fit.c_m2, "c_m1": diff_fit.c_m1,
                           "c_0": diff_fit.c_0,
                           "fit_residual": diff_fit.fit_residual},
        "difference_extrapolated": richardson_extrapolate(s_values, diffs),
    }
    _emit(payload, rows, run)


def cmd_ratio(run):
    u_values = _parse_positive_list(run.options["u_values"], "u")
    cfg = run.quadrature
    a0n = a0_numeric(cfg)
    b1 = b1_constant(a0n)
    a1 = a1_constant(a0n, sech_log2_integral(cfg))
    leading = math.pi * math.exp(-EULER_GAMMA)
    rows = []
    for u in u_values:
        rows.append({
            "u": u,
            "ratio_two_term": gap_ratio_expansion(u, a1, b1),
            "ratio_from_asymptotics":
                delta_asymptotic(u, b1) / neel_asymptotic(u, a1),
            "leading": leading,
        })
    _emit({"rows": rows}, rows, run)


_COMMANDS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "dos": cmd_dos,
    "constants": cmd_constants,
    "regularize": cmd_regularize,
    "ratio": cmd_ratio,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=1e-10,
                        help="relative quadrature tolerance (default 1e-10)")
    common.add_argument("--abs-tol", type=float, default=1e-13,
                        help="absolute quadrature tolerance (default 1e-13)")
    common.add_argument("--max-depth", type=int, default=200,
                        help="adaptive subdivision limit (default 200)")
    common.add_argument("--mc-samples", type=int, default=200_000,
                        help="Monte Carlo oracle sample count (default 200000)")
    common.add_argument("--seed", type=int, default=DEFAULT_MC_SEED,
                        help=f"Monte Carlo seed (default {DEFAULT_MC_SEED})")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")
    common.add_argument("--output", default=None, metavar="PATH",
                        help="write to PATH instead of stdout")

    parser = argparse.ArgumentParser(
        prog="hubbard-gap",
        description="Mean-field gap equation of the half-filled square-lattice "
                    "Hubbard model: solver, constants, and validation tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common],
                       help="solve the gap equation at one (u, t)")
    p.add_argument("--u", type=float, required=True, help="on-site coupling")
    p.add_argument("--t", type=float, default=1.0, help="hopping (default 1)")

    p = sub.add_parser("sweep", parents=[common],
                       help="gap vs asymptotic form over a coupling grid")
    p.add_argument("--u-min", type=float, required=True)
    p.add_argument("--u-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--log-spacing", action="store_true",
                   help="geometric instead of linear grid")

    p = sub.add_parser("dos", parents=[common],
                       help="density-of-states table with the singular expansion")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--eps-min", type=float, required=True)
    p.add_argument("--eps-max", type=float, required=True)

    sub.add_parser("constants", parents=[common],
                   help="derived constants with deviation diagnostics")

    p = sub.add_parser("regularize", parents=[common],
                       help="moment pair table plus Laurent fits")
    p.add_argument("--s-values", required=True,
                   help="comma-separated positive s grid (at least 4 values)")

    p = sub.add_parser("ratio", parents=[common],
                       help="gap ratio expansion table")
    p.add_argument("--u-values", required=True,
                   help="comma-separated positive couplings")

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        quadrature = QuadratureConfig(rel_tol=args.rel_tol,
                                      abs_tol=args.abs_tol,
                                      max_depth=args.max_depth,
                                      mc_samples=args.mc_samples)
        options = {key: value for key, value in vars(args).items()
                   if key not in ("command", "rel_tol", "abs_tol", "max_depth",
                                  "mc_samples", "seed", "format", "output")}
        run = RunConfig(command=args.command, quadrature=quadrature,
                        output_format=args.format, output_path=args.output,
                        seed=args.seed, options=options)
        _COMMANDS[args.command](run)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def entrypoint():
    sys.exit(main())
