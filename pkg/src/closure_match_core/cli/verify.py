"""Run a seeded oracle-equivalence suite and print its summary.

File:   verify.py
Module: cli.verify
"""

from dataclasses import replace
from pathlib import Path

from rich.console import Console
from rich.table import Table

from closure_match_core.cli.common import load_policy, run_guarded, setting
from closure_match_core.errors import ExitCode
from closure_match_core.oracle_utils import OracleBudget
from closure_match_core.verify_report import write_summary_report
from closure_match_core.verify_suites import VerifyMode, VerifySummary, run_verify


def render_summary(summary: VerifySummary, console: Console) -> None:
    """Print the summary as a table, followed by the first counterexample if any."""
    table = Table(title=f"verify {summary.mode}")
    for column in ("trials", "passed", "failed", "internal", "seed"):
        table.add_column(column, justify="right")
    table.add_row(
        str(summary.trials),
        str(summary.passed),
        str(summary.failed),
        str(summary.internal_errors),
        str(summary.seed),
    )
    console.print(table)
    if summary.first_counterexample is not None:
        console.print("First counterexample:", markup=False)
        console.print(summary.first_counterexample, markup=False, highlight=False)
        for message in summary.first_messages:
            console.print(f"  - {message}", markup=False, highlight=False)


def main(
    mode: VerifyMode,
    trials: int | None = None,
    seed: int | None = None,
    budget: int | None = None,
    report: Path | None = None,
) -> int:
    """Run one verify suite.

    ``budget`` overrides ``oracle.max_edges``; the bipartite suite is bounded by
    ``oracle.max_deficiency_doctors`` and the sat suite by ``oracle.max_sat_variables``.

    Returns:
        int: 0 if every trial passed, 4 otherwise.
    """

    def _body() -> int:
        limits = OracleBudget.from_policy(load_policy())
        if budget is not None:
            limits = replace(limits, max_edges=budget)
        summary = run_verify(
            mode,
            trials=int(setting(trials, "verify.trials", 200)),
            seed=int(setting(seed, "verify.seed", 42)),
            budget=limits,
        )
        render_summary(summary, Console())
        if report is not None:
            write_summary_report(summary, report)
        return ExitCode.OK if summary.ok else ExitCode.INTERNAL

    return run_guarded("verify", _body)
