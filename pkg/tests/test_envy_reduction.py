"""
Test cases for closure-match-core.envy_reduction module.
"""

import pytest

from closure_match_core.envy_reduction import (
    EnvyInstance,
    envy_pairs,
    is_envy_free,
    reduce_envyfree,
    solve_envyfree,
)
from closure_match_core.errors import InputError
from closure_match_core.instance_generator import GenParams, gen_envy_instance
from closure_match_core.instance_model import Edge, Matching, PrefOrder
from closure_match_core.oracle_utils import enumerate_matchings, envyfree_bruteforce
from closure_match_core.stability_utils import is_stable


def _envy(prefs: dict[str, list[list[str]]], hospitals=("x", "y")) -> EnvyInstance:
    return EnvyInstance(
        doctors=tuple(prefs),
        hospitals=tuple(hospitals),
        prefs={d: PrefOrder.from_lists(groups) for d, groups in prefs.items()},
    )


def test_reduce_envyfree_closes_all_hospitals():
    envy = _envy({"a": [["x"], ["y"]], "b": [["x"]]})
    inst = reduce_envyfree(envy)
    assert inst.closed == {"x", "y"}
    assert inst.prefs["x"].groups == (frozenset({"a", "b"}),)
    assert inst.prefs["y"].groups == (frozenset({"a"}),)
    assert inst.edges == (Edge("a", "x"), Edge("a", "y"), Edge("b", "x"))


def test_envy_pairs():
    envy = _envy({"a": [["x"], ["y"]], "b": [["x"], ["y"]]})
    matching = Matching.from_pairs([("a", "y"), ("b", "x")])
    assert envy_pairs(envy, matching) == [("a", "b")]
    assert not is_envy_free(envy, matching)


def test_single_doctor_gets_first_choice():
    envy = _envy({"a": [["x"], ["y"]]})
    assert solve_envyfree(envy) == Matching.from_pairs([("a", "x")])


def test_two_doctors_one_hospital():
    envy = _envy({"a": [["x"]], "b": [["x"]]}, hospitals=("x",))
    assert solve_envyfree(envy) is None


def test_two_doctors_same_ranking():
    envy = _envy({"a": [["x"], ["y"]], "b": [["x"], ["y"]]})
    assert solve_envyfree(envy) is None


def test_hospital_preferences_rejected():
    with pytest.raises(InputError) as excinfo:
        EnvyInstance(doctors=("a",), hospitals=("x",), prefs={"x": PrefOrder.from_lists([["a"]])})
    assert excinfo.value.code == "E_SYNTAX"


def test_unknown_hospital_rejected():
    with pytest.raises(InputError) as excinfo:
        _envy({"a": [["z"]]})
    assert excinfo.value.code == "E_UNKNOWN_ID"


def test_agrees_with_bruteforce():
    for seed in range(80):
        envy = gen_envy_instance(GenParams(seed=seed, n_doctors=3, n_hospitals=4, edge_prob=0.5))
        expected = envyfree_bruteforce(envy)
        result = solve_envyfree(envy)
        assert (result is None) == (expected is None), f"seed {seed}"
        if result is not None:
            assert is_envy_free(envy, result)
            assert len(result) == len(envy.doctors)


def test_blocking_matches_envy_on_saturating_matchings():
    for seed in range(30):
        envy = gen_envy_instance(GenParams(seed=seed, n_doctors=3, n_hospitals=3, edge_prob=0.6))
        inst = reduce_envyfree(envy)
        for matching in enumerate_matchings(inst):
            if len(matching) == len(envy.doctors):
                assert is_stable(inst, matching) == is_envy_free(envy, matching)
