"""closure_match_core/verify_report.py.

Format verify summaries as JSON, Markdown or plain text and write them to disk.
Reports carry no timestamps, so identical runs produce identical files.

"""

import json
from pathlib import Path

from closure_match_core import log_utils
from closure_match_core.verify_suites import VerifySummary

__all__ = [
    "format_summary_as_json",
    "format_summary_as_markdown",
    "format_summary_as_text",
    "write_summary_report",
]

logger = log_utils.logger


def format_summary_as_json(summary: VerifySummary) -> str:
    """Format a summary as an indented JSON document."""
    return json.dumps(summary.to_dict(), indent=2) + "\n"


def format_summary_as_markdown(summary: VerifySummary) -> str:
    """Format a summary as Markdown with a counts table and the first counterexample.

    Args:
        summary (VerifySummary): The verify outcome.

    Returns:
        str: Markdown text; the counterexample section is omitted when all trials passed.
    """
    lines = [
        f"# Verify Summary for {summary.mode}",
        "",
        "| trials | passed | failed | internal_errors | seed |",
        "|---|---|---|---|---|",
        f"| {summary.trials} | {summary.passed} | {summary.failed} "
        f"| {summary.internal_errors} | {summary.seed} |",
    ]
    if summary.first_counterexample is not None:
        lines += ["", "## First Counterexample", "", "```text"]
        lines.append(summary.first_counterexample.rstrip("\n"))
        lines += ["```", "", "## Messages", ""]
        lines.extend(f"- {message}" for message in summary.first_messages)
    return "\n".join(lines) + "\n"


def format_summary_as_text(summary: VerifySummary) -> str:
    """Format a summary as plain text."""
    lines = [
        f"Mode: {summary.mode}",
        f"Seed: {summary.seed}",
        f"Trials: {summary.trials}",
        f"Passed: {summary.passed}",
        f"Failed: {summary.failed}",
        f"Internal Errors: {summary.internal_errors}",
    ]
    if summary.first_counterexample is not None:
        lines += ["", "First Counterexample:", summary.first_counterexample.rstrip("\n"), ""]
        lines.append("Messages:")
        lines.extend(f"  - {message}" for message in summary.first_messages)
    return "\n".join(lines) + "\n"


def write_summary_report(summary: VerifySummary, path: str | Path) -> Path:
    """Write a summary in the format implied by the file suffix.

    ``.json`` gives JSON, ``.md`` Markdown, anything else plain text.

    Returns:
        Path: The path written.
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".json":
        text = format_summary_as_json(summary)
    elif suffix == ".md":
        text = format_summary_as_markdown(summary)
    else:
        text = format_summary_as_text(summary)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Verify report written to {path}")
    return path
