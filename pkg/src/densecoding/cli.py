"""Command-line front end.

Subcommands: ``capacity``, ``sweep``, ``surface``, ``optimize``, ``verify``.

Exit codes: 0 success, 1 verification failure, 2 bad flags or parameters,
3 numerical failure.
"""

import argparse
import contextlib
import json
import math
import sys

from . import sweep, verify
from .channels import ChannelKind, ChannelParams
from .estimator import resolve_threads
from .exceptions import NumericalError, ParameterError
from .protection import STRENGTH_CAP, MeasurementStrengths, evaluate, optimize_strengths

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

DEFAULT_ALPHA = math.sqrt(0.5)


class UsageError(Exception):
    pass


def _strengths(args):
    if args.m is None and args.n is None:
        return None
    return MeasurementStrengths(args.m or 0.0, args.n or 0.0)


def _print_record(record, fmt, out):
    if fmt == "json":
        json.dump(record, out)
        out.write("\n")
        return
    width = max(len(k) for k in record)
    for key, value in record.items():
        if isinstance(value, float):
            value = sweep.format_value(value)
        elif value is None:
            value = "-"
        out.write(f"{key:<{width}}  {value}\n")


@contextlib.contextmanager
def _open_out(path, out):
    if path in (None, "-"):
        yield out
        return
    try:
        fh = open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc
    with fh:
        yield fh


def _emit(rows, args, out):
    with _open_out(args.out, out) as fh:
        if args.format == "json":
            sweep.write_json(rows, fh)
        else:
            sweep.write_csv(rows, fh)


def cmd_capacity(args, out):
    kind = ChannelKind.parse(args.channel)
    strengths = _strengths(args)
    result = evaluate(kind, ChannelParams(args.lam, args.mu), args.alpha, strengths)
    _print_record(
        {
            "channel": kind.value,
            "alpha": args.alpha,
            "lambda": args.lam,
            "mu": args.mu,
            "m": None if strengths is None else strengths.m,
            "n": None if strengths is None else strengths.n,
            "chi": result.chi,
            "entropy_avg": result.entropy_avg,
            "entropy_state": result.entropy_state,
            "success_prob": result.success_prob,
        },
        args.format,
        out,
    )
    return EXIT_OK


def cmd_sweep(args, out):
    lambdas = sweep.grid_points(args.lambda_start, args.lambda_stop, args.lambda_step)
    rows = sweep.sweep_rows(
        args.channel,
        lambdas,
        mus=args.mu_values,
        alpha=args.alpha,
        m=args.m,
        n=args.n,
        threads=resolve_threads(args.threads),
    )
    _emit(rows, args, out)
    return EXIT_OK


def cmd_surface(args, out):
    m_values = sweep.grid_points(args.m_start, args.m_stop, args.m_step, upper=STRENGTH_CAP)
    n_values = sweep.grid_points(args.n_start, args.n_stop, args.n_step, upper=STRENGTH_CAP)
    rows = sweep.surface_rows(
        args.channel,
        args.lam,
        args.mu,
        m_values,
        n_values,
        alpha=args.alpha,
        threads=resolve_threads(args.threads),
    )
    _emit(rows, args, out)
    return EXIT_OK


def cmd_optimize(args, out):
    kind = ChannelKind.parse(args.channel)
    params = ChannelParams(args.lam, args.mu)
    baseline = evaluate(kind, params, args.alpha)
    strengths, best = optimize_strengths(
        kind,
        params,
        args.alpha,
        grid=args.grid,
        refine_iters=args.refine,
        threads=resolve_threads(args.threads),
    )
    _print_record(
        {
            "channel": kind.value,
            "alpha": args.alpha,
            "lambda": args.lam,
            "mu": args.mu,
            "m": strengths.m,
            "n": strengths.n,
            "chi": best.chi,
            "baseline_chi": baseline.chi,
            "improvement": best.chi - baseline.chi,
            "success_prob": best.success_prob,
        },
        args.format,
        out,
    )
    return EXIT_OK


def cmd_verify(args, out):
    channel_grid = verify.DEFAULT_CHANNEL_GRID
    if args.points != len(channel_grid):
        channel_grid = tuple(k / (args.points - 1) for k in range(args.points))
    reports = list(verify.verification_grid(channel_grid=channel_grid))
    worst = verify.worst_residuals(reports)
    failed = [r for r in reports if not r.passed]
    for kind, r in worst.items():
        status = "ok" if r.residual <= verify.RESIDUAL_TOL else "FAIL"
        out.write(
            f"{kind.value:<6} worst residual {r.residual:.3e} "
            f"(lambda={r.lam:g} mu={r.mu:g} m={r.m:g} n={r.n:g} alpha={r.alpha:.4g}) {status}\n"
        )
    out.write(f"{len(reports) - len(failed)}/{len(reports)} grid points within {verify.RESIDUAL_TOL:g}\n")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def _unit(value):
    try:
        v = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{v} is outside [0, 1]")
    return v


def _strength(value):
    v = _unit(value)
    if v >= 1.0:
        raise argparse.ArgumentTypeError("strengths must be below 1 (m = n = 1 is singular)")
    return v


def build_parser():
    parser = argparse.ArgumentParser(
        prog="densecoding",
        description="Dense-coding capacity through correlated noisy channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--channel", choices=[k.value for k in ChannelKind], default="ad")
    common.add_argument("--alpha", type=_unit, default=DEFAULT_ALPHA, help="|00> amplitude")
    common.add_argument("--threads", type=int, default=1, help="worker threads, 0 = auto")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--lambda", dest="lam", type=_unit, default=0.5)
    point.add_argument("--mu", type=_unit, default=0.5)

    strengths = argparse.ArgumentParser(add_help=False)
    strengths.add_argument("--m", type=_strength, default=None, help="weak measurement strength")
    strengths.add_argument("--n", type=_strength, default=None, help="reversal strength")

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--out", default="-", help="output path, '-' for stdout")
    table.add_argument("--format", choices=["csv", "json"], default="csv")

    record = argparse.ArgumentParser(add_help=False)
    record.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("capacity", parents=[common, point, strengths, record],
                       help="capacity at a single parameter point")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("sweep", parents=[common, strengths, table],
                       help="capacity over a lambda grid for several mu values")
    p.add_argument("--lambda-start", type=_unit, default=0.01)
    p.add_argument("--lambda-stop", type=_unit, default=1.0)
    p.add_argument("--lambda-step", type=float, default=0.01)
    p.add_argument("--mu", dest="mu_values", type=_unit, nargs="+", default=list(sweep.DEFAULT_MUS))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("surface", parents=[common, point, table],
                       help="capacity over an (m, n) grid")
    for name in ("m", "n"):
        p.add_argument(f"--{name}-start", type=_strength, default=0.0)
        p.add_argument(f"--{name}-stop", type=_strength, default=STRENGTH_CAP)
        p.add_argument(f"--{name}-step", type=float, default=0.05)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("optimize", parents=[common, point, record],
                       help="search (m, n) for the largest protected capacity")
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--refine", type=int, default=5)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="closed forms against the Kraus pipeline")
    p.add_argument("--points", type=int, default=5,
                   help="lambda and mu grid points per axis (default 5)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 0) < 0:
        parser.error("--threads must be non-negative")
    if args.command == "verify" and args.points < 2:
        parser.error("--points must be at least 2")
    try:
        return args.func(args, out)
    except (ParameterError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
