"""
Test cases for closure-match-core.instance_model module.
"""

import math

import pytest

from closure_match_core.errors import InputError
from closure_match_core.instance_model import (
    Edge,
    Instance,
    Matching,
    PrefOrder,
    group_by_hospital,
    hospital_neighborhood,
    supported_doctors,
)


def _small_instance() -> Instance:
    return Instance(
        doctors=("b", "a"),
        hospitals=("y", "x"),
        closed=frozenset({"y"}),
        prefs={
            "a": PrefOrder.from_lists([["x"], ["y"]]),
            "b": PrefOrder.from_lists([["x"]]),
            "x": PrefOrder.from_lists([["a", "b"]]),
            "y": PrefOrder.from_lists([["a"]]),
        },
    )


def test_instance_sorts_ids_and_derives_edges():
    inst = _small_instance()
    assert inst.doctors == ("a", "b")
    assert inst.hospitals == ("x", "y")
    assert inst.edges == (Edge("a", "x"), Edge("a", "y"), Edge("b", "x"))


def test_instance_fills_missing_prefs():
    inst = Instance(doctors=("a",), hospitals=("x",))
    assert inst.edges == ()
    assert len(inst.prefs["x"]) == 0


def test_ranks_and_incidence():
    inst = _small_instance()
    assert inst.rank("a", Edge("a", "x")) == 1
    assert inst.rank("a", Edge("a", "y")) == 2
    assert inst.rank("x", Edge("b", "x")) == 1
    assert inst.rank("a", None) == math.inf
    assert inst.incident("x") == (Edge("a", "x"), Edge("b", "x"))
    assert inst.degree("a") == 2


def test_rank_rejects_non_incident_edge():
    inst = _small_instance()
    with pytest.raises(InputError) as excinfo:
        inst.rank("b", Edge("a", "x"))
    assert excinfo.value.code == "E_NOT_INCIDENT"


def test_asymmetric_preferences_rejected():
    with pytest.raises(InputError) as excinfo:
        Instance(
            doctors=("a",),
            hospitals=("x",),
            prefs={"a": PrefOrder.from_lists([["x"]])},
        )
    assert excinfo.value.code == "E_ASYMMETRIC"


def test_unknown_partner_rejected():
    with pytest.raises(InputError) as excinfo:
        Instance(doctors=("a",), hospitals=("x",), prefs={"a": PrefOrder.from_lists([["z"]])})
    assert excinfo.value.code == "E_UNKNOWN_ID"


def test_duplicate_ids_rejected():
    with pytest.raises(InputError) as excinfo:
        Instance(doctors=("a", "a"), hospitals=("x",))
    assert excinfo.value.code == "E_DUP_ID"
    with pytest.raises(InputError) as excinfo:
        Instance(doctors=("a",), hospitals=("a",))
    assert excinfo.value.code == "E_DUP_ID"


def test_closed_must_be_hospital():
    with pytest.raises(InputError) as excinfo:
        Instance(doctors=("a",), hospitals=("x",), closed=frozenset({"a"}))
    assert excinfo.value.code == "E_CLOSED_NOT_HOSPITAL"


def test_invalid_id_rejected():
    with pytest.raises(InputError) as excinfo:
        Instance(doctors=("a b",), hospitals=("x",))
    assert excinfo.value.code == "E_SYNTAX"


def test_pref_order_rejects_repeated_partner():
    with pytest.raises(InputError) as excinfo:
        PrefOrder.from_lists([["x"], ["x"]])
    assert excinfo.value.code == "E_DUP_PREF_ENTRY"
    with pytest.raises(InputError):
        PrefOrder.from_lists([["x", "x"]])


def test_pref_order_rank_of_unlisted_is_unmatched():
    order = PrefOrder.from_lists([["x", "y"], ["z"]])
    assert order.rank_of("y") == 1
    assert order.rank_of("z") == 2
    assert order.rank_of("w") == math.inf
    assert order.partners == ("x", "y", "z")


def test_matching_rejects_repeated_vertex():
    with pytest.raises(InputError) as excinfo:
        Matching.from_pairs([("a", "x"), ("b", "x")])
    assert excinfo.value.code == "E_NOT_MATCHING"


def test_matching_partner_lookup():
    matching = Matching.from_pairs([("b", "x"), ("a", "y")])
    assert matching.of("a") == Edge("a", "y")
    assert matching.of("x") == Edge("b", "x")
    assert matching.of("c") is None
    assert list(matching) == [Edge("a", "y"), Edge("b", "x")]
    assert Edge("a", "y") in matching


def test_edge_set_helpers():
    edges = [Edge("a", "x"), Edge("b", "x"), Edge("c", "y")]
    assert supported_doctors(edges) == {"a", "b", "c"}
    assert hospital_neighborhood(edges, {"a", "b"}) == {"x"}
    assert group_by_hospital(edges) == {
        "x": [Edge("a", "x"), Edge("b", "x")],
        "y": [Edge("c", "y")],
    }
    assert str(Edge("a", "x")) == "a x"
