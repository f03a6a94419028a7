"""Solve an instance and write its stable matching (or report that none exists).

Usage:
    closure-match solve INSTANCE [--method auto|separated|degree2|brute] [--output FILE]

File:   solve.py
Module: cli.solve
"""

from enum import Enum
from pathlib import Path

from closure_match_core import log_utils
from closure_match_core.cli.common import emit, run_guarded, setting
from closure_match_core.errors import ExitCode, PreconditionError
from closure_match_core.instance_model import Instance, Matching
from closure_match_core.instance_reader import read_instance_file
from closure_match_core.instance_writer import format_solve_output
from closure_match_core.oracle_utils import DEFAULT_MAX_EDGES, find_stable_matching
from closure_match_core.solver_degree2 import max_doctor_degree, solve_degree2
from closure_match_core.solver_separated import satisfies_star, solve_separated

logger = log_utils.logger


class SolveMethod(str, Enum):
    """Solver selection."""

    AUTO = "auto"
    SEPARATED = "separated"
    DEGREE2 = "degree2"
    BRUTE = "brute"


def pick_method(inst: Instance, budget: int) -> SolveMethod:
    """Choose the first applicable method: separated, then degree2, then brute.

    Raises:
        PreconditionError: ``E_NO_METHOD`` if no method applies.
    """
    if satisfies_star(inst):
        return SolveMethod.SEPARATED
    if max_doctor_degree(inst) <= 2:
        return SolveMethod.DEGREE2
    if len(inst.edges) <= budget:
        return SolveMethod.BRUTE
    raise PreconditionError(
        "E_NO_METHOD",
        f"Instance is not separated, has doctor degree {max_doctor_degree(inst)} "
        f"and {len(inst.edges)} edges (brute-force budget {budget})",
    )


def solve_instance(
    inst: Instance, method: SolveMethod, budget: int
) -> tuple[Matching | None, SolveMethod]:
    """Run the requested method and return (answer, method used)."""
    if method is SolveMethod.AUTO:
        method = pick_method(inst, budget)
        logger.info(f"auto selected method: {method.value}")
    if method is SolveMethod.SEPARATED:
        return solve_separated(inst), method
    if method is SolveMethod.DEGREE2:
        return solve_degree2(inst), method
    return find_stable_matching(inst, budget), method


def main(
    input_path: Path,
    output: Path | None = None,
    method: SolveMethod = SolveMethod.AUTO,
    budget: int | None = None,
) -> int:
    """Solve an instance file.

    Returns:
        int: 0 if a stable matching was found, 1 if none exists, 2 on bad
        input, 3 if the method does not apply, 4 on an internal failure.
    """

    def _body() -> int:
        inst = read_instance_file(input_path)
        limit = setting(budget, "oracle.max_edges", DEFAULT_MAX_EDGES)
        matching, used = solve_instance(inst, SolveMethod(method), limit)
        emit(format_solve_output(matching, used.value), output)
        return ExitCode.OK if matching is not None else ExitCode.NO_STABLE_MATCHING

    return run_guarded("solve", _body)
