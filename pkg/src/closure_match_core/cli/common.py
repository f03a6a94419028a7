"""Shared plumbing for CLI commands: policy lookup, output and error mapping.

File: common.py
Module: cli.common
"""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import typer

from closure_match_core import config_utils, log_utils, solver_policy
from closure_match_core.errors import ClosureMatchError, ExitCode
from closure_match_core.instance_writer import write_text_file

logger = log_utils.logger


def load_policy() -> dict[str, Any]:
    """Load the solver policy, honouring a solver_policy.yaml in the working directory."""
    return solver_policy.load_solver_policy(Path.cwd())


def setting(value: Any, dotted_key: str, default: Any) -> Any:
    """Return ``value`` if given on the command line, else the policy value."""
    if value is not None:
        return value
    return config_utils.policy_value(load_policy(), dotted_key, default)


def emit(text: str, output: Path | None) -> None:
    """Write ``text`` to ``output``, or to stdout when no path is given."""
    if output is None:
        typer.echo(text, nl=False)
    else:
        write_text_file(text, output)


def run_guarded(command: str, body: Callable[[], int]) -> int:
    """Run a command body and map domain errors to exit codes.

    Args:
        command (str): Command name for the start/end banners.
        body (Callable[[], int]): The command logic, returning an exit code.

    Returns:
        int: The exit code.
    """
    log_utils.log_run_start(command)
    try:
        code = body()
    except ClosureMatchError as e:
        logger.error(f"{command} failed: {e}")
        code = int(e.exit_code)
    status = "success" if code in (ExitCode.OK, ExitCode.NO_STABLE_MATCHING) else f"exit {code}"
    log_utils.log_run_end(command, status)
    return code
