"""
Test cases for closure-match-core.errors module.
"""

from closure_match_core.errors import (
    BudgetError,
    ExitCode,
    InputError,
    InvariantViolation,
    PreconditionError,
)


def test_exit_codes_by_error_kind():
    assert InputError("E_SYNTAX", "x").exit_code == ExitCode.USAGE_ERROR == 2
    assert PreconditionError("E_STAR_VIOLATED", "x").exit_code == ExitCode.PRECONDITION == 3
    assert BudgetError("E_BUDGET", "x").exit_code == ExitCode.PRECONDITION
    assert InvariantViolation("E_NOT_STABLE", "x").exit_code == ExitCode.INTERNAL == 4


def test_error_carries_code_and_message():
    err = InputError("E_SYNTAX", "bad line")
    assert err.code == "E_SYNTAX"
    assert err.message == "bad line"
    assert str(err) == "E_SYNTAX: bad line"
    assert isinstance(err, ValueError)
    assert isinstance(InvariantViolation("E_X", "y"), AssertionError)
