"""closure_match_core/errors.py.

Domain exceptions and the exit codes the CLI maps them to.

Every exception carries a stable ``code`` string (for example ``E_SYNTAX``)
so callers and tests can branch on the failure kind without parsing messages.

"""

from enum import IntEnum

__all__ = [
    "BudgetError",
    "ClosureMatchError",
    "ExitCode",
    "InputError",
    "InvariantViolation",
    "PreconditionError",
]


class ExitCode(IntEnum):
    """Process exit codes shared by every subcommand."""

    OK = 0
    NO_STABLE_MATCHING = 1
    USAGE_ERROR = 2
    PRECONDITION = 3
    INTERNAL = 4


class ClosureMatchError(Exception):
    """Base class for all library errors.

    Attributes:
        code (str): Stable machine-readable error code.
        message (str): Human-readable description.
    """

    exit_code: ExitCode = ExitCode.INTERNAL

    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class InputError(ClosureMatchError, ValueError):
    """Malformed or inconsistent input (files, ids, edges, parameters)."""

    exit_code = ExitCode.USAGE_ERROR


class PreconditionError(ClosureMatchError):
    """A method was asked to run outside the instances it is defined for."""

    exit_code = ExitCode.PRECONDITION


class BudgetError(PreconditionError):
    """An exhaustive oracle was asked to enumerate beyond its size budget."""


class InvariantViolation(ClosureMatchError, AssertionError):
    """A guaranteed property failed to hold; this always indicates a bug."""

    exit_code = ExitCode.INTERNAL
