import argparse
import logging
import math
import sys
from typing import List, Optional

from config.settings import load_config
from tools.errors import (
    EXIT_ASSERTION,
    EXIT_INVALID_INPUT,
    EXIT_NUMERICAL,
    EXIT_OK,
    AsymptoticsError,
    exit_code_for,
)
from tools.report_exporter import (
    OutputRow,
    generate_rows_csv,
    generate_rows_json,
    generate_rows_table,
    write_text_atomic,
)
from workflows.verification.check_runner import run_check_suite, suite_names
from workflows.verification.sweep import (
    FAMILY_LABELS,
    SweepConfig,
    evaluate_point,
    family_for_label,
    geometric_grid,
    run_sweep,
)

# Initialize configuration
config = load_config()

logger = logging.getLogger(__name__)


class CliArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors follow the single-line ``error:`` contract"""

    def error(self, message: str):
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_INVALID_INPUT)


def parse_T(text: str) -> float:
    """Positive finite float, or the literal ``inf``"""
    if text.strip().lower() == "inf":
        return math.inf
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"T must be a positive number or 'inf', got '{text}'")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"T must be a positive number or 'inf', got '{text}'")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(
        prog="complex-asymptotics",
        description="Numerical verification of Laplace-type complex-phase integral asymptotics",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    def add_point_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--family", required=True, choices=list(FAMILY_LABELS))
        sub.add_argument("--c", type=float, required=True)
        sub.add_argument("--T", type=parse_T, required=True)
        sub.add_argument("--rel-tol", type=float, default=config["default_rel_tol"])

    eval_parser = subparsers.add_parser("eval", help="Evaluate one (family, c, T, s) point")
    add_point_flags(eval_parser)
    eval_parser.add_argument("--s", type=float, required=True)
    eval_parser.add_argument("--format", choices=["table", "csv", "json"], default="table")

    sweep_parser = subparsers.add_parser("sweep", help="Run a geometric s-sweep and fit the decay order")
    add_point_flags(sweep_parser)
    sweep_parser.add_argument("--s-min", type=float, required=True)
    sweep_parser.add_argument("--s-max", type=float, required=True)
    sweep_parser.add_argument("--points", type=int, required=True)
    sweep_parser.add_argument("--out", default=None)
    sweep_parser.add_argument("--format", choices=["table", "csv"], default="csv")

    check_parser = subparsers.add_parser("check", help="Run an acceptance suite")
    check_parser.add_argument("suite", help=f"one of: {', '.join(suite_names())}")

    return parser


def cmd_eval(args: argparse.Namespace) -> int:
    family = family_for_label(args.family, args.T)
    point = evaluate_point(family, args.c, args.T, args.s, args.rel_tol)
    row = OutputRow(args.family, args.c, args.T, args.s, point.numeric, point.asymptotic, point.rel_err)

    if args.format == "csv":
        sys.stdout.write(generate_rows_csv([row]))
    elif args.format == "json":
        sys.stdout.write(generate_rows_json([row]))
    else:
        sys.stdout.write(generate_rows_table([row]))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    family = family_for_label(args.family, args.T)
    grid = geometric_grid(args.s_min, args.s_max, args.points)
    report = run_sweep(SweepConfig(family, args.c, args.T, grid, args.rel_tol))

    rows = [
        OutputRow(args.family, args.c, args.T, r.s, r.numeric, r.asymptotic, r.rel_err)
        for r in report.rows
    ]
    fit = (report.fitted_order, report.fit_r2)

    if args.out:
        write_text_atomic(args.out, generate_rows_csv(rows, fit))
    elif args.format == "table":
        sys.stdout.write(generate_rows_table(rows))
    else:
        sys.stdout.write(generate_rows_csv(rows, fit))

    for note in report.notes:
        logger.warning(note)
    summary = f"fitted_order = {report.fitted_order:.6f}, R^2 = {report.fit_r2:.6f} ({report.fit_points} points)"
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    result = run_check_suite(args.suite)
    for outcome in result["results"]:
        verdict = "PASS" if outcome.passed else "FAIL"
        print(f"{verdict} [{outcome.suite}] {outcome.name}: {outcome.detail}")
    for error in result["errors"]:
        logger.error(error)

    passed = sum(1 for outcome in result["results"] if outcome.passed)
    print(f"{passed}/{len(result['results'])} checks passed")
    return EXIT_OK if result["passed"] else EXIT_ASSERTION


COMMANDS = {
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "check": cmd_check,
}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, str(config["log_level"]).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except AsymptoticsError as e:
        message = str(e).replace("\n", " ")
        sys.stderr.write(f"error: {message}\n")
        return exit_code_for(e)
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID_INPUT
    except ArithmeticError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return exit_code_for(e)
    except Exception as e:
        message = str(e).replace("\n", " ")
        sys.stderr.write(f"error: {type(e).__name__}: {message}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
