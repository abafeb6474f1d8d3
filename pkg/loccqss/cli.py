"""
Command implementations shared by the command-line entry point and the HTTP frontend.

Each `*_report` builder takes an already parsed code and returns a `CommandReport`;
the `cmd_*` functions load the code named by a `RunConfig` first.
"""

import sys
from typing import Iterable, Optional

from loguru import logger

from .code import (
    DEFAULT_BUDGETS,
    analyze_code,
    enumerate_assisting,
    min_distance,
)
from .constant import (
    DEFAULT_SEED,
    DEFAULT_SIMULATE_TRIALS,
    DEFAULT_VERIFY_TRIALS,
    NORM_TOLERANCE,
    Command,
    ExitCode,
    OutputFormat,
    Verdict,
)
from .protocol import run_batch, verify_all, verify_theorem1
from .qsim import format_state
from .types import Budgets, CommandReport, LinearCode, RunConfig
from .utils import dump_json, dump_msgpack, format_fixed, load_code_spec


def _players(indices: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in indices) + "}"


def _flag(value: bool) -> str:
    return "true" if value else "false"


def analyze_report(code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> CommandReport:
    analysis = analyze_code(code, budgets)
    lines = [
        f"code: [{analysis.n},{analysis.k}]_{analysis.q} over {code.field}",
        f"n={analysis.n}, k={analysis.k}, q={analysis.q}",
        f"distance: {analysis.distance_weight} (minimum weight), {analysis.distance_rank} (column rank)",
        f"d={analysis.distance_weight}, MDS: {_flag(analysis.is_mds)}",
        f"recovery threshold: every B with |B| >= {analysis.recovery_threshold} is assisted",
        "smallest assisted |B|: "
        + (str(analysis.min_assisted_size) if analysis.min_assisted_size is not None else "none"),
    ]
    if analysis.is_mds:
        lines.append(
            f"MDS: every B with |B| >= k = {analysis.k} is assisted; "
            f"optimal subsets with |B| = k: {analysis.optimal_subsets}"
        )
    data = {"code": code.to_spec(), **analysis.model_dump()}
    return CommandReport(command=Command.ANALYZE, data=data, text="\n".join(lines))


def subsets_report(
    code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS, jobs: int = 1
) -> CommandReport:
    reports = enumerate_assisting(code, budgets, jobs)
    d = min_distance(code, budgets)
    width = max(len(_players(range(code.n))), 1) + 2

    lines = [f"{'B':<{width}}{'A':<{width}}rank  assisted  quantum  classical"]
    rows = []
    for report in reports:
        lines.append(
            f"{_players(report.subset_B):<{width}}{_players(report.subset_A):<{width}}"
            f"{report.rank_GB:<6}{'yes' if report.is_assisted else 'no':<10}"
            f"{report.quantum_channels:<9}{report.classical_channels}"
        )
        rows.append(
            {
                "subset_B": [i + 1 for i in report.subset_B],
                "subset_A": [i + 1 for i in report.subset_A],
                "rank_GB": report.rank_GB,
                "is_assisted": report.is_assisted,
                "quantum_channels": report.quantum_channels,
                "classical_channels": report.classical_channels,
            }
        )
    assisted = sum(r.is_assisted for r in reports)
    lines.append(f"assisted: {assisted} of {len(reports)} proper subsets")
    lines.append(
        f"distance check: every B with |B| > n - d = {code.n - d} is assisted (consistent)"
    )
    data = {
        "code": code.to_spec(),
        "subsets": rows,
        "assisted": assisted,
        "total": len(reports),
        "n_minus_d": code.n - d,
    }
    return CommandReport(command=Command.SUBSETS, data=data, text="\n".join(lines))


def simulate_report(
    code: LinearCode,
    A: Iterable[int],
    secret_source: str = "random",
    trials: int = DEFAULT_SIMULATE_TRIALS,
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> CommandReport:
    transcripts = run_batch(code, A, secret_source, trials, seed, jobs, budgets)
    blocks = []
    for i, t in enumerate(transcripts, start=1):
        blocks.append(
            "\n".join(
                [
                    f"trial {i} (seed {t.seed})",
                    f"A={_players(t.subset_A)} B={_players(t.subset_B)}",
                    f"a={t.outcomes_a} p={format_fixed(t.probability)}",
                    f"z={t.correction_z}",
                    f"fidelity={format_fixed(t.fidelity)}",
                    "recovered:",
                    format_state(t.recovered),
                ]
            )
        )
    failed = [t for t in transcripts if t.fidelity < 1.0 - NORM_TOLERANCE]
    if failed:
        logger.error(f"{len(failed)} of {len(transcripts)} run(s) lost fidelity")
    return CommandReport(
        command=Command.SIMULATE,
        data={"transcripts": [t.model_dump_for_output() for t in transcripts]},
        text="\n\n".join(blocks),
        exit_code=ExitCode.FAILURE if failed else ExitCode.OK,
    )


def verify_report(
    code: LinearCode,
    A: Optional[Iterable[int]] = None,
    trials: int = DEFAULT_VERIFY_TRIALS,
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> CommandReport:
    if A is None:
        verdicts = verify_all(code, trials, seed, jobs, budgets)
    else:
        verdicts = [verify_theorem1(code, A, trials, seed, budgets)]
    mds = min_distance(code, budgets) == code.n - code.k + 1

    lines = []
    for v in verdicts:
        line = (
            f"A={_players(v.subset_A)} B={_players(v.subset_B)} rank={v.rank_GB} "
            f"{v.direction.value} {v.verdict.value}"
        )
        if v.witness is not None:
            line += (
                f" witness x1={v.witness.x1} x2={v.witness.x2} "
                f"word_B={v.witness.word_B} overlap={format_fixed(v.witness.overlap)}"
            )
        else:
            line += f" trials={v.trials} min_fidelity={format_fixed(v.min_fidelity)}"
        if mds and len(v.subset_B) == code.k:
            line += " (boundary |B| = k)"
        lines.append(line)
    passed = sum(v.verdict == Verdict.PASS for v in verdicts)
    lines.append(f"PASS: {passed} of {len(verdicts)}")
    return CommandReport(
        command=Command.VERIFY,
        data={
            "verdicts": [v.model_dump_for_output() for v in verdicts],
            "passed": passed,
            "total": len(verdicts),
        },
        text="\n".join(lines),
        exit_code=ExitCode.OK if passed == len(verdicts) else ExitCode.FAILURE,
    )


def cmd_analyze(config: RunConfig) -> CommandReport:
    return analyze_report(load_code_spec(config.code_file), config.budgets)


def cmd_subsets(config: RunConfig) -> CommandReport:
    return subsets_report(load_code_spec(config.code_file), config.budgets, config.jobs)


def cmd_simulate(config: RunConfig) -> CommandReport:
    return simulate_report(
        load_code_spec(config.code_file),
        config.subset_a,
        config.secret_source,
        config.trials,
        config.seed,
        config.jobs,
        config.budgets,
    )


def cmd_verify(config: RunConfig) -> CommandReport:
    return verify_report(
        load_code_spec(config.code_file),
        config.subset_a,
        config.trials,
        config.seed,
        config.jobs,
        config.budgets,
    )


COMMANDS = {
    Command.ANALYZE: cmd_analyze,
    Command.SUBSETS: cmd_subsets,
    Command.SIMULATE: cmd_simulate,
    Command.VERIFY: cmd_verify,
}


def render(report: CommandReport, fmt: OutputFormat) -> str | bytes:
    match fmt:
        case OutputFormat.JSON:
            return dump_json(report.data) + "\n"
        case OutputFormat.MSGPACK:
            return dump_msgpack(report.data)
        case _:
            return report.text + "\n"


def run(config: RunConfig) -> ExitCode:
    """
    Execute the configured command and write its report.

    Returns
    -------
    `ExitCode`
        OK, or FAILURE if a run or verification failed
    """
    report = COMMANDS[config.command](config)
    output = render(report, config.format)
    if config.output is not None:
        if isinstance(output, bytes):
            config.output.write_bytes(output)
        else:
            config.output.write_text(output, encoding="utf-8")
        logger.info(f"Wrote {config.command.value} report to {config.output}")
    else:
        sys.stdout.write(output)
        sys.stdout.flush()
    return report.exit_code
