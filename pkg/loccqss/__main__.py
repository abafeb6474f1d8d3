import sys
from argparse import ArgumentParser
from typing import Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from .cli import run
from .constant import (
    DEFAULT_SEED,
    DEFAULT_SIMULATE_TRIALS,
    DEFAULT_VERIFY_TRIALS,
    Command,
    ExitCode,
    OutputFormat,
)
from .exceptions import BudgetExceeded, ConsistencyError, ProtocolError, QSSError, SimulationError
from .types import Budgets, RunConfig
from .utils import parse_subset


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="loccqss",
        description="Simulate and analyze LOCC-assisted quantum secret sharing over linear codes.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = ArgumentParser(add_help=False)
    common.add_argument("--code", required=True, help="Code specification JSON file")
    common.add_argument("--subset-a", help="Measuring players, 1-based, e.g. 1,2")
    common.add_argument(
        "--secret", default="random", help="random, basis:<idx> or file:<path>"
    )
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Random seed (u64)")
    common.add_argument("--trials", type=int, default=None, help="Protocol runs")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads")
    common.add_argument("--budget-amps", type=int, help="Largest state vector q^n")
    common.add_argument("--budget-codewords", type=int, help="Largest codeword count q^k")
    common.add_argument("--budget-sites", type=int, help="Largest n for subset scans")
    common.add_argument("--output", help="Output file (standard output if absent)")
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Report format",
    )
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    # Analysis commands
    subparsers.add_parser(
        Command.ANALYZE.value, parents=[common], help="Distance, MDS flag and thresholds"
    )
    subparsers.add_parser(
        Command.SUBSETS.value, parents=[common], help="Rank report for every proper subset B"
    )

    # Protocol commands
    subparsers.add_parser(
        Command.SIMULATE.value, parents=[common], help="Run the protocol for --subset-a"
    )
    subparsers.add_parser(
        Command.VERIFY.value,
        parents=[common],
        help="Check the rank criterion on every subset, or on --subset-a",
    )
    return parser


def build_config(args) -> RunConfig:
    """
    Merge parsed flags with environment budgets into a validated `RunConfig`.
    """
    command = Command(args.command)
    overrides = {
        name: value
        for name, value in (
            ("max_amplitudes", args.budget_amps),
            ("max_codewords", args.budget_codewords),
            ("max_subset_sites", args.budget_sites),
        )
        if value is not None
    }
    budgets = Budgets(**{**Budgets.from_env().model_dump(), **overrides})

    trials = args.trials
    if trials is None:
        trials = (
            DEFAULT_VERIFY_TRIALS if command == Command.VERIFY else DEFAULT_SIMULATE_TRIALS
        )

    return RunConfig(
        code_file=args.code,
        command=command,
        subset_a=parse_subset(args.subset_a) if args.subset_a else None,
        secret_source=args.secret,
        seed=args.seed,
        trials=trials,
        jobs=args.jobs,
        output=args.output,
        format=OutputFormat(args.format),
        budgets=budgets,
        verbose=args.verbose,
    )


def configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point; returns the process exit code.

    0 when every check passes, 1 on a protocol or verification failure,
    2 on a usage, parse or validation error, 3 when a budget is exceeded.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.OK if e.code == 0 else ExitCode.USAGE

    configure_logging(args.verbose)
    try:
        config = build_config(args)
        return int(run(config))
    except BudgetExceeded as e:
        logger.error(f"Budget exceeded: {e}")
        return ExitCode.BUDGET
    except (ProtocolError, SimulationError, ConsistencyError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return ExitCode.FAILURE
    except (QSSError, ValidationError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return ExitCode.USAGE


if __name__ == "__main__":
    sys.exit(main())
