"""
Test cases for closure-match-core.stability_utils module.
"""

from dataclasses import replace

import pytest

from closure_match_core.errors import InputError
from closure_match_core.instance_generator import GenParams, gen_instance
from closure_match_core.instance_model import Edge, Matching
from closure_match_core.instance_reader import parse_instance
from closure_match_core.oracle_utils import enumerate_matchings
from closure_match_core.stability_utils import (
    all_block_reports,
    block_report,
    blocking_edges,
    is_matching,
    is_stable,
)

TWO_BY_TWO = """
doctors: a b
hospitals: x y
{closed}
pref a: x > y
pref b: x
pref x: a = b
pref y: a
"""


def _two_by_two(closed: str = ""):
    return parse_instance(TWO_BY_TWO.format(closed=f"closed: {closed}" if closed else ""))


def _one_edge(closed: bool):
    header = "closed: x\n" if closed else ""
    return parse_instance(f"doctors: a\nhospitals: x\n{header}pref a: x\npref x: a\n")


def test_is_matching():
    inst = _two_by_two()
    assert is_matching(inst, [])
    assert not is_matching(inst, [Edge("a", "x"), Edge("b", "x")])
    assert is_matching(inst, [Edge("a", "x")])
    assert not is_matching(inst, [Edge("b", "y")])


def test_block_report_closed_unmatched_hospital():
    report = block_report(_one_edge(closed=True), Matching(), Edge("a", "x"))
    assert not report.weak_on_h
    assert not report.strong_on_h
    assert report.strong_on_d
    assert not report.blocks


def test_block_report_open_unmatched_hospital():
    report = block_report(_one_edge(closed=False), Matching(), Edge("a", "x"))
    assert report.strong_on_d and report.strong_on_h
    assert report.blocks


def test_block_report_weak_hospital_side():
    inst = _two_by_two()
    matching = Matching.from_pairs([("a", "y"), ("b", "x")])
    report = block_report(inst, matching, Edge("a", "x"))
    assert report.strong_on_d
    assert report.weak_on_h and not report.strong_on_h
    assert report.blocks
    assert report.describe() == "a x doctor=strong hospital=weak"


def test_block_report_errors():
    inst = _two_by_two()
    matching = Matching.from_pairs([("a", "x")])
    with pytest.raises(InputError) as excinfo:
        block_report(inst, matching, Edge("a", "x"))
    assert excinfo.value.code == "E_EDGE_IN_MATCHING"
    with pytest.raises(InputError) as excinfo:
        block_report(inst, matching, Edge("b", "y"))
    assert excinfo.value.code == "E_EDGE_NOT_IN_E"


def test_blocking_edges_lists_only_blocking():
    inst = _two_by_two()
    matching = Matching.from_pairs([("a", "y"), ("b", "x")])
    assert [r.edge for r in blocking_edges(inst, matching)] == [Edge("a", "x")]


def test_blocking_edges_all_closed_empty_matching():
    inst = _two_by_two("x y")
    assert blocking_edges(inst, Matching()) == []
    assert is_stable(inst, Matching())


def test_is_stable_with_closed_hospital():
    inst = _two_by_two("x")
    assert is_stable(inst, Matching.from_pairs([("a", "y")]))


def test_no_stable_matching_without_closure():
    inst = _two_by_two()
    assert not any(is_stable(inst, m) for m in enumerate_matchings(inst))


def test_full_matching_of_one_edge_is_stable():
    assert is_stable(_one_edge(closed=False), Matching.from_pairs([("a", "x")]))


def test_all_block_reports_include_one_sided():
    inst = parse_instance(
        "doctors: a b\nhospitals: x\npref a: x\npref b: x\npref x: a > b\n"
    )
    reports = all_block_reports(inst, Matching.from_pairs([("a", "x")]))
    assert [r.edge for r in reports] == [Edge("b", "x")]
    assert reports[0].strong_on_d and not reports[0].weak_on_h
    assert not reports[0].blocks


def test_closing_hospitals_never_adds_blocking_edges():
    for seed in range(15):
        inst = gen_instance(GenParams(seed=seed, n_doctors=3, n_hospitals=3, closure_prob=0.0))
        closed_inst = replace(inst, closed=frozenset(inst.hospitals))
        for matching in enumerate_matchings(inst):
            open_blocks = {r.edge for r in blocking_edges(inst, matching)}
            closed_blocks = {r.edge for r in blocking_edges(closed_inst, matching)}
            assert closed_blocks <= open_blocks
