#!/usr/bin/env python3
"""
Witt Tensor - Main Entry Point

Command-line interface for verifying the composition series of the tensor
square of the natural W(1)-module and for printing composition series of
individual modules.

Usage:
    witt-tensor verify -p 7 --format json
    witt-tensor verify --primes 5,7,11,13 --workers 4
    witt-tensor series -p 7 -m AsPlus
    witt-tensor selftest -p 11

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage error.
"""

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from witt_tensor.algebra.ff_linalg import validate_prime
from witt_tensor.algebra.gmodules import (
    GradedGModule,
    adjoint_module,
    natural_module,
    simple_module,
    tensor_square_natural,
    verma_module,
)
from witt_tensor.algebra.module_structure import composition_series
from witt_tensor.algebra.tensor_pipeline import canonical_submodules, s2_split, top_level_kronecker
from witt_tensor.algebra.witt_algebra import WittAlgebra
from witt_tensor.errors import IndexOutOfRangeError, InvalidPrimeError, WittTensorError
from witt_tensor.graph import draw_graph, run_verification
from witt_tensor.report import overall_status, render_reports, render_series
from witt_tensor.schemas import CheckStatus, OutputFormat, RunMode, VerificationConfig

logger = logging.getLogger("witt_tensor")

CLI_MAX_PRIME = 2 ** 15

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SELECTORS = ("A1", "A2", "AsPlus", "AaPlus", "LxL", "Z:λ", "L:λ", "adjoint")


class UsageError(Exception):
    """Bad command-line input that argparse cannot catch by itself."""


# ============================================================================
# ARGUMENT HANDLING
# ============================================================================

def parse_primes(args: argparse.Namespace) -> List[int]:
    if args.primes:
        try:
            primes = [int(token) for token in args.primes.split(",") if token.strip()]
        except ValueError:
            raise UsageError(f"--primes expects a comma separated list of integers, got {args.primes!r}")
    else:
        primes = [args.prime]
    if not primes:
        raise UsageError("no prime given")
    return sorted({validate_prime(p, max_prime=CLI_MAX_PRIME) for p in primes})


def build_config(args: argparse.Namespace) -> VerificationConfig:
    """Knobs shared by every command; out-of-range values raise ValidationError."""
    return VerificationConfig(
        enumeration_cap=args.enumeration_cap,
        shuffles=getattr(args, "shuffles", 5),
        seed=args.seed,
        include_timings=not args.no_timings,
    )


def build_selected_module(algebra: WittAlgebra, selector: str) -> GradedGModule:
    """Module named by a selector: A1, A2, AsPlus, AaPlus, LxL, Z:λ, L:λ or adjoint."""
    if selector == "A1":
        return natural_module(algebra)
    if selector == "A2":
        return tensor_square_natural(algebra)
    if selector in ("AsPlus", "AaPlus"):
        d = canonical_submodules(s2_split(algebra.p, algebra))
        return d.sym_plus if selector == "AsPlus" else d.alt_plus
    if selector == "LxL":
        return top_level_kronecker(algebra)
    if selector == "adjoint":
        return adjoint_module(algebra)
    kind, _, label = selector.partition(":")
    if kind in ("Z", "L") and label:
        try:
            lam = int(label)
        except ValueError:
            raise UsageError(f"weight in {selector!r} is not an integer")
        try:
            return verma_module(algebra, lam) if kind == "Z" else simple_module(algebra, lam)
        except IndexOutOfRangeError as exc:
            raise UsageError(str(exc))
    raise UsageError(f"unknown module selector {selector!r}; choose from {', '.join(SELECTORS)}")


def emit(text: str, out: Optional[str]) -> None:
    """Write to --out verbatim if given, else to stdout."""
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc.strerror or exc}")
        logger.info("[CLI] report written to %s", out)
    else:
        sys.stdout.write(text)


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s %(message)s")


# ============================================================================
# COMMANDS
# ============================================================================

def _run_batch(primes: Sequence[int], config: VerificationConfig, mode: RunMode, workers: int):
    if workers > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_verification, primes, repeat(config), repeat(mode)))
    return [run_verification(p, config, mode) for p in primes]


def cmd_verify(args: argparse.Namespace, mode: RunMode = RunMode.VERIFY) -> int:
    primes = parse_primes(args)
    config = build_config(args)
    if getattr(args, "show_graph", False):
        try:
            sys.stderr.write(draw_graph(mode) + "\n")
        except ImportError as exc:
            logger.warning("[CLI] cannot draw the graph: %s", exc)
    reports = _run_batch(primes, config, mode, args.workers)
    emit(render_reports(reports, OutputFormat(args.format), include_timings=config.include_timings), args.out)
    return EXIT_OK if overall_status(reports) == CheckStatus.PASS else EXIT_FAILED


def cmd_selftest(args: argparse.Namespace) -> int:
    return cmd_verify(args, mode=RunMode.SELFTEST)


def cmd_series(args: argparse.Namespace) -> int:
    p = validate_prime(args.prime, max_prime=CLI_MAX_PRIME)
    config = build_config(args)
    algebra = WittAlgebra(p)
    try:
        module = build_selected_module(algebra, args.module)
        report = composition_series(module, config.enumeration_cap)
    except UsageError:
        raise
    except WittTensorError as exc:
        logger.error("[SERIES] %s: %s", args.module, exc)
        return EXIT_FAILED
    emit(render_series(report, OutputFormat(args.format)), args.out)
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", "-f",
        choices=[fmt.value for fmt in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Output format (default: text)"
    )
    common.add_argument(
        "--out", "-o",
        type=str,
        help="Write the report to this file instead of stdout"
    )
    common.add_argument(
        "--enumeration-cap",
        type=int,
        default=5,
        help="Largest weight component of ker e_-1 to enumerate (default: 5)"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Seed of the randomized property tests (default: 0)"
    )
    common.add_argument(
        "--no-timings",
        action="store_true",
        help="Leave per-phase timings out of the report (timings differ from run to run)"
    )
    common.add_argument(
        "--verbose", "-v",
        action="count",
        default=0,
        help="-v for progress, -vv for debug output on stderr"
    )

    batch = argparse.ArgumentParser(add_help=False)
    target = batch.add_mutually_exclusive_group(required=True)
    target.add_argument("-p", "--prime", type=int, help="Characteristic p > 3")
    target.add_argument("--primes", type=str, help="Comma separated primes, e.g. 5,7,11,13")
    batch.add_argument(
        "--workers", "-w",
        type=int,
        default=1,
        help="Verify distinct primes in this many processes (default: 1)"
    )

    parser = argparse.ArgumentParser(
        prog="witt-tensor",
        description="Composition series of the tensor square of the natural W(1)-module over F_p",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  witt-tensor verify -p 7 --format json
  witt-tensor verify --primes 5,7,11,13 --workers 4
  witt-tensor series -p 7 -m AsPlus
  witt-tensor selftest -p 11

Reports carry wall-clock timings per phase unless --no-timings is given,
so compare JSON output of two runs with --no-timings.
        """
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common, batch], help="Run every verification phase")
    verify.add_argument(
        "--shuffles",
        type=int,
        default=5,
        help="Random orders per Jordan-Hölder stability test (default: 5)"
    )
    verify.add_argument(
        "--show-graph",
        action="store_true",
        help="Print the verification graph to stderr"
    )
    verify.set_defaults(handler=cmd_verify)

    series = commands.add_parser("series", parents=[common], help="Print the composition series of a module")
    series.add_argument("-p", "--prime", type=int, required=True, help="Characteristic p > 3")
    series.add_argument("-m", "--module", required=True, help=f"One of {', '.join(SELECTORS)}")
    series.set_defaults(handler=cmd_series)

    selftest = commands.add_parser("selftest", parents=[common, batch], help="Run the axiom and linear algebra suites")
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except (InvalidPrimeError, UsageError) as exc:
        sys.stderr.write(f"witt-tensor: error: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        sys.stderr.write(f"witt-tensor: error: invalid option: {problems}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
