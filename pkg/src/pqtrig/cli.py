"""pqtrig command line.

Usage:
    pqtrig eval sin --p 2 --q 2 --x 0.5235987755982988
    pqtrig table sinh --p 2 --q 6 --x-min 0 --x-max 0.9 --n 50 > sinh_2_6.csv
    pqtrig const --p 1.5 --q 6
    pqtrig verify --tolerance 1e-9 --filter DA_ --out reports.jsonl

Exit status: 0 success, 1 a check failed, 2 usage, domain or output error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

import numpy as np
import pandas as pd

from pqtrig.config import get_settings
from pqtrig.errors import PQTrigError
from pqtrig.gtf import FUNCTIONS, domain_end, evaluate
from pqtrig.params import ParamPair, conjugate, pi_pq, r_map
from pqtrig.schemas import validate_df
from pqtrig.verify import SuiteConfig, list_check_names, run_suite, summarize, write_jsonl

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def setup_logging(verbose: bool = False) -> None:
    """Configure logging; -v switches to DEBUG, otherwise the configured log_level."""
    level = logging.DEBUG if verbose else getattr(logging, get_settings().log_level.upper(),
                                                    logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _pair(args: argparse.Namespace) -> ParamPair:
    return ParamPair(args.p, args.q)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_eval(args: argparse.Namespace) -> int:
    """Print one function value and the inversion residual."""
    result = evaluate(args.fn, _pair(args), args.x)
    print(f"{result.value:.15g}")
    print(f"residual {result.residual:.3g}")
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    """CSV table x,value with n evenly spaced rows on [x_min, x_max]."""
    pq = _pair(args)
    if args.n < 2:
        raise ValueError(f"--n must be >= 2, got {args.n}")
    end = domain_end(args.fn, pq)
    margin = get_settings().singular_margin
    if not 0.0 <= args.x_min < args.x_max:
        raise ValueError(f"need 0 <= x-min < x-max, got x-min={args.x_min}, x-max={args.x_max}")
    if args.x_max >= end - margin:
        raise ValueError(
            f"x-max={args.x_max} is not inside the domain of {args.fn}_{{{pq.p:g},{pq.q:g}}}, "
            f"which ends at {end:.17g}"
        )

    xs = np.linspace(args.x_min, args.x_max, args.n)
    values = [evaluate(args.fn, pq, float(x)).value for x in xs]
    df = validate_df(pd.DataFrame({"x": xs, "value": values}), "function_table")
    logger.info(f"Table of {args.fn}_{{{pq.p:g},{pq.q:g}}}: {len(df)} rows")
    df.to_csv(sys.stdout, index=False, float_format="%.17g", lineterminator="\n")
    return EXIT_OK


def cmd_const(args: argparse.Namespace) -> int:
    """π_{p,q}, p*, r and π_{r,q} for one pair."""
    pq = _pair(args)
    r = r_map(pq)
    p_star = f"{conjugate(pq.p):.15g}" if pq.p > 1.0 else "undefined"
    print(f"pi_pq {pi_pq(pq)}")
    print(f"p_star {p_star}")
    print(f"r {r:.15g}")
    print(f"pi_rq {pi_pq(pq.dual())}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the suite (optionally a name-prefix subset), one line per check."""
    config = SuiteConfig(name_prefix=args.filter)
    if args.filter and not list_check_names(config):
        raise ValueError(f"no check name starts with '{args.filter}'")

    reports = run_suite(args.tolerance, config)
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        flag = f" indeterminate={report.indeterminate}" if report.indeterminate else ""
        print(f"{status} {report.name} max_residual={report.max_residual:.3g} "
              f"tolerance={report.tolerance:.3g}{flag}")

    counts = summarize(reports)
    print(f"{counts['passed']}/{counts['total']} checks passed")
    if args.out:
        write_jsonl(reports, args.out)
    return EXIT_OK if counts["failed"] == 0 else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqtrig",
                                     description="Generalized trigonometric functions")
    parser.add_argument("-v", "--verbose", action="store_true", help="Verbose output")
    subparsers = parser.add_subparsers(dest="command", required=True)

    fn_names = sorted(FUNCTIONS)

    # eval
    p = subparsers.add_parser("eval", help="Evaluate one function at one point")
    p.add_argument("fn", choices=fn_names)
    p.add_argument("--p", type=_finite_float, required=True)
    p.add_argument("--q", type=_finite_float, required=True)
    p.add_argument("--x", type=_finite_float, required=True)

    # table
    p = subparsers.add_parser("table", help="CSV table of a function on a range")
    p.add_argument("fn", choices=fn_names)
    p.add_argument("--p", type=_finite_float, required=True)
    p.add_argument("--q", type=_finite_float, required=True)
    p.add_argument("--x-min", type=_finite_float, dest="x_min", default=0.0)
    p.add_argument("--x-max", type=_finite_float, dest="x_max", required=True)
    p.add_argument("--n", type=int, default=100, help="Number of rows (>= 2)")

    # const
    p = subparsers.add_parser("const", help="Print π_{p,q}, p*, r and π_{r,q}")
    p.add_argument("--p", type=_finite_float, required=True)
    p.add_argument("--q", type=_finite_float, required=True)

    # verify
    p = subparsers.add_parser("verify", help="Run the verification suite")
    p.add_argument("--tolerance", type=_finite_float, default=None,
                   help="Residual tolerance (default: PQTRIG_VERIFY_TOLERANCE)")
    p.add_argument("--filter", default=None, help="Only checks whose name starts with this")
    p.add_argument("--out", default=None, help="Also write reports as JSON lines")

    return parser


COMMANDS = {
    "eval": cmd_eval,
    "table": cmd_table,
    "const": cmd_const,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    setup_logging(args.verbose)

    try:
        return COMMANDS[args.command](args)
    except (PQTrigError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
