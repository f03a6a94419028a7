"""Find a doctor-saturating envy-free matching.

File:   solve_envy.py
Module: cli.solve_envy
"""

from pathlib import Path

from closure_match_core.cli.common import emit, run_guarded
from closure_match_core.envy_reduction import solve_envyfree
from closure_match_core.errors import ExitCode
from closure_match_core.instance_reader import parse_envy_instance, read_text_file
from closure_match_core.instance_writer import format_solve_output


def main(input_path: Path, output: Path | None = None) -> int:
    """Solve an envy instance file.

    Returns:
        int: 0 if an envy-free matching exists, 1 if not, 2 on bad input.
    """

    def _body() -> int:
        matching = solve_envyfree(parse_envy_instance(read_text_file(input_path)))
        emit(format_solve_output(matching, "envy"), output)
        return ExitCode.OK if matching is not None else ExitCode.NO_STABLE_MATCHING

    return run_guarded("solve-envy", _body)
