"""
Test cases for closure-match-core.verify_suites module.
"""

import pytest

from closure_match_core import verify_suites
from closure_match_core.errors import InvariantViolation
from closure_match_core.instance_model import supported_doctors
from closure_match_core.oracle_utils import OracleBudget
from closure_match_core.verify_suites import VerifyMode, run_verify


@pytest.mark.parametrize("mode", list(VerifyMode))
def test_suites_pass_on_small_runs(mode: VerifyMode):
    summary = run_verify(mode, trials=6, seed=42)
    assert summary.ok, summary.first_messages
    assert summary.passed == 6
    assert summary.internal_errors == 0
    assert summary.first_counterexample is None


def test_runs_are_deterministic():
    first = run_verify("degree2", trials=8, seed=3)
    second = run_verify("degree2", trials=8, seed=3)
    assert first.to_dict() == second.to_dict()


def test_wrong_answers_are_reported(monkeypatch):
    monkeypatch.setattr(verify_suites, "solve_separated", lambda inst: None)
    summary = run_verify(VerifyMode.SEPARATED, trials=20, seed=1)
    assert not summary.ok
    assert summary.failed > 0
    assert summary.passed + summary.failed == 20
    assert summary.first_counterexample.startswith("doctors:")
    assert "oracle found" in summary.first_messages[0]


def test_internal_errors_are_counted(monkeypatch):
    def _explode(inst):
        raise InvariantViolation("E_NOT_STABLE", "boom")

    monkeypatch.setattr(verify_suites, "solve_degree2", _explode)
    summary = run_verify(VerifyMode.DEGREE2, trials=4, seed=9)
    assert summary.internal_errors == 4
    assert summary.failed == 4
    assert summary.first_messages == ["internal: E_NOT_STABLE: boom"]


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        run_verify("weights", trials=1, seed=0)


def test_bipartite_stays_within_doctor_limit(monkeypatch):
    calls = []
    real = verify_suites.minimizers_bruteforce

    def _spy(edges, budget):
        calls.append((len(supported_doctors(edges)), budget))
        return real(edges, budget)

    monkeypatch.setattr(verify_suites, "minimizers_bruteforce", _spy)
    limits = OracleBudget(max_deficiency_doctors=2)
    summary = run_verify("bipartite", trials=10, seed=5, budget=limits)
    assert summary.ok, summary.first_messages
    assert len(calls) == 10
    assert all(doctors <= 2 and budget == 2 for doctors, budget in calls)


def test_sat_variable_limit_is_reported_per_trial():
    summary = run_verify("sat", trials=4, seed=2, budget=OracleBudget(max_sat_variables=2))
    assert summary.failed == 4
    assert summary.internal_errors == 0
    assert summary.first_messages[0].startswith("E_BUDGET:")
