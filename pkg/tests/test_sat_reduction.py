"""
Test cases for closure-match-core.sat_reduction module.
"""

import itertools

import pytest

from closure_match_core.errors import InputError
from closure_match_core.instance_model import Edge, Matching
from closure_match_core.oracle_utils import all_stable_matchings
from closure_match_core.sat_reduction import (
    B2Formula,
    SatMapping,
    assignment_to_matching,
    canonical_candidates,
    clause_gadget_instance,
    format_b2sat,
    is_satisfied,
    matching_to_assignment,
    max_degree,
    parse_b2sat,
    prefers_closed,
    reduce_sat,
)
from closure_match_core.stability_utils import is_stable

SAMPLE = """c three variables, four clauses
p b2sat 3 4
1 2 3 0
1 2 3 0
-1 -2 -3 0
-1 -2 -3 0
"""


def _sample() -> B2Formula:
    return parse_b2sat(SAMPLE)


def test_parse_b2sat():
    formula = _sample()
    assert formula.n == 3
    assert formula.m == 4
    assert formula.clauses[2] == (-1, -2, -3)
    assert formula.occurrences(1) == [(1, 1), (2, 1)]
    assert formula.occurrences(-3) == [(3, 3), (4, 3)]


def test_format_b2sat_reparses():
    formula = _sample()
    assert parse_b2sat(format_b2sat(formula)) == formula
    assert format_b2sat(formula).splitlines()[0] == "p b2sat 3 4"


@pytest.mark.parametrize(
    ("text", "code"),
    [
        ("1 2 3 0\n", "E_SYNTAX"),
        ("p cnf 3 4\n", "E_SYNTAX"),
        ("p b2sat 3 4\n1 2 3 0\n", "E_SYNTAX"),
        ("p b2sat 3 1\n1 2 0\n", "E_CLAUSE_SIZE"),
        ("p b2sat 3 1\n1 2 3\n", "E_SYNTAX"),
        ("p b2sat 3 3\n1 2 3 0\n1 2 3 0\n-1 -2 -3 0\n", "E_OCCURRENCE"),
        ("p b2sat 3 4\n1 1 3 0\n1 2 3 0\n-1 -2 -3 0\n-1 -2 -3 0\n", "E_CLAUSE_SIZE"),
        ("p b2sat 3 4\n1 2 3 0\n1 2 3 0\n-1 -2 -3 0\n-1 -2 -2 0\n", "E_CLAUSE_SIZE"),
        ("p b2sat 3 4\n1 2 3 0\n1 2 3 0\n-1 -2 -3 0\n-1 -2 2 0\n", "E_OCCURRENCE"),
    ],
)
def test_parse_b2sat_errors(text: str, code: str):
    with pytest.raises(InputError) as excinfo:
        parse_b2sat(text)
    assert excinfo.value.code == code


def test_complementary_literals_accepted():
    formula = parse_b2sat("p b2sat 3 4\n1 -1 2 0\n1 -1 -2 0\n2 3 -3 0\n-2 3 -3 0\n")
    assert formula.complementary_clauses() == [1, 2, 3, 4]


def test_is_satisfied():
    formula = _sample()
    assert is_satisfied(formula, (0, 0, 1))
    assert not is_satisfied(formula, (0, 0, 0))
    assert not is_satisfied(formula, (1, 1, 1))
    assert not is_satisfied(formula, (0, 1))


def test_reduce_sat_sizes_and_side_conditions():
    formula = _sample()
    inst, mapping = reduce_sat(formula)
    assert len(inst.doctors) == 2 * formula.n + 5 * formula.m
    assert len(inst.hospitals) == 3 * formula.n + 6 * formula.m
    assert len(inst.edges) == 4 * formula.n + 13 * formula.m
    assert max_degree(inst) <= 3
    assert prefers_closed(inst)
    assert inst.closed == mapping.closed_hospitals()
    assert "t_1" in inst.closed and "h_1.1" not in inst.closed


def test_reduce_sat_literal_hospitals():
    inst, mapping = reduce_sat(_sample())
    t1 = mapping.true_hospital(1)
    assert set(inst.neighbors(t1)) == {"p_1.1", "p_2.1", "d_1.2"}
    assert inst.rank(t1, Edge("p_1.1", t1)) < inst.rank(t1, Edge("d_1.2", t1))
    assert mapping.literal_hospital(-2) == "f_2"
    assert mapping.q_star(1, 3) == "q_1.2"


def test_assignment_round_trip():
    formula = _sample()
    inst, mapping = reduce_sat(formula)
    satisfying = [phi for phi in itertools.product((0, 1), repeat=3) if is_satisfied(formula, phi)]
    assert satisfying
    for phi in satisfying:
        matching = assignment_to_matching(formula, phi, mapping, inst)
        assert is_stable(inst, matching)
        assert matching_to_assignment(mapping, matching) == phi


def test_unsatisfying_assignment_rejected():
    formula = _sample()
    _, mapping = reduce_sat(formula)
    with pytest.raises(InputError) as excinfo:
        assignment_to_matching(formula, (0, 0, 0), mapping)
    assert excinfo.value.code == "E_UNSAT_ASSIGNMENT"


def test_stable_candidates_decode_to_satisfying_assignments():
    formula = _sample()
    inst, mapping = reduce_sat(formula)
    decoded = {
        matching_to_assignment(mapping, m)
        for m in canonical_candidates(formula, mapping)
        if is_stable(inst, m)
    }
    assert decoded
    assert all(is_satisfied(formula, phi) for phi in decoded)


def test_matching_to_assignment_requires_canonical_form():
    formula = _sample()
    inst, mapping = reduce_sat(formula)
    matching = assignment_to_matching(formula, (0, 0, 1), mapping, inst)
    broken = Matching(frozenset(e for e in matching.edges if e.doctor != "d_1.2"))
    with pytest.raises(InputError) as excinfo:
        matching_to_assignment(mapping, broken)
    assert excinfo.value.code == "E_NOT_CANONICAL"


def test_clause_gadget_has_three_stable_matchings():
    inst = clause_gadget_instance()
    assert len(inst.edges) == 10
    stable = all_stable_matchings(inst)
    assert len(stable) == 3
    q_star = {"q_1.1", "q_1.2"}
    for matching in stable:
        sent = [
            e for e in matching.edges if e.doctor in {"p_1.1", "p_1.2", "p_1.3"} and e.hospital in q_star
        ]
        assert len(sent) == 1
        assert Edge("p_1.5", "q_1.3") in matching


def test_mapping_dict_round_trip():
    mapping = SatMapping(3, 4)
    data = mapping.to_dict()
    assert data["variables"][2]["true"] == "t_2"
    assert data["clauses"][4]["slack"] == ["s_4.1", "s_4.2", "s_4.3"]
    assert SatMapping.from_dict(data) == mapping
