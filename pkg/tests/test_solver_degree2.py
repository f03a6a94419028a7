"""
Test cases for closure-match-core.solver_degree2 module.
"""

from itertools import product

import pytest

from closure_match_core.contract_checks import check_doctor_optimal
from closure_match_core.errors import PreconditionError
from closure_match_core.instance_generator import GenParams, gen_instance
from closure_match_core.instance_model import Edge, Instance, Matching, PrefOrder
from closure_match_core.instance_reader import parse_instance
from closure_match_core.oracle_utils import all_stable_matchings
from closure_match_core.preprocess import preprocess
from closure_match_core.solver_degree2 import (
    Component,
    ComponentKind,
    analyze_components,
    build_digraph,
    find_paths,
    max_doctor_degree,
    solve_degree2,
    tree_matching_xi,
)
from closure_match_core.solver_separated import satisfies_star, solve_separated
from closure_match_core.stability_utils import is_stable

WORKED = """
doctors: a b c
hospitals: s1 h0
closed: s1
pref a: s1 > h0
pref b: h0
pref c: h0
pref s1: a
pref h0: {h0}
"""

PATH = """
doctors: d1 d2
hospitals: h1 h2 h3
{closed}
pref d1: h1 = h2
pref d2: h2 = h3
pref h1: d1
pref h2: d1 = d2
pref h3: d2
"""


def _worked(h0_order: str):
    return parse_instance(WORKED.format(h0=h0_order))


def _path(closed: str = ""):
    return parse_instance(PATH.format(closed=f"closed: {closed}" if closed else ""))


def _q_component() -> Component:
    return Component(
        id=0,
        kind=ComponentKind.Q,
        doctors=frozenset({"d1", "d2"}),
        hospitals=frozenset({"h1", "h2", "h3"}),
        edges=frozenset({Edge("d1", "h1"), Edge("d1", "h2"), Edge("d2", "h2"), Edge("d2", "h3")}),
    )


def test_worked_instance_components():
    inst = _worked("a > b = c")
    res = preprocess(inst)
    assert res.forbidden == {Edge("b", "h0"), Edge("c", "h0")}
    assert res.matching == Matching.from_pairs([("a", "s1")])

    components = analyze_components(inst, res)
    kinds = {c.kind: c for c in components}
    assert set(kinds) == {ComponentKind.PSTAR, ComponentKind.R_SINGLETON}
    pstar = kinds[ComponentKind.PSTAR]
    assert (pstar.d_x, pstar.h_x, pstar.hbar_x) == ("a", "s1", "h0")
    assert kinds[ComponentKind.R_SINGLETON].hospitals == {"h0"}


def test_worked_instance_digraph_has_one_arc():
    inst = _worked("a > b = c")
    res = preprocess(inst)
    components = analyze_components(inst, res)
    digraph = build_digraph(inst, res, components)
    singleton = next(c for c in components if c.kind is ComponentKind.R_SINGLETON)
    pstar = next(c for c in components if c.kind is ComponentKind.PSTAR)
    assert digraph.arcs == ((singleton.id, pstar.id),)
    assert digraph.v_plus == {singleton.id}
    assert digraph.v_minus == {pstar.id}
    assert find_paths(digraph) == {singleton.id: [singleton.id, pstar.id]}


def test_worked_instance_without_arc():
    inst = _worked("b = c > a")
    res = preprocess(inst)
    digraph = build_digraph(inst, res, analyze_components(inst, res))
    assert digraph.arcs == ()
    assert find_paths(digraph) is None


def test_solve_worked_instance():
    inst = _worked("a > b = c")
    sigma = solve_degree2(inst)
    assert sigma == Matching.from_pairs([("a", "h0")])
    assert is_stable(inst, sigma)


def test_solve_worked_instance_without_stable_matching():
    inst = _worked("b = c > a")
    assert solve_degree2(inst) is None
    assert all_stable_matchings(inst) == []


def test_no_critical_hospital_returns_preprocessed_matching():
    inst = parse_instance(
        "doctors: a b\nhospitals: x\npref a: x\npref b: x\npref x: a > b\n"
    )
    assert solve_degree2(inst) == preprocess(inst).matching


def test_path_component_is_q():
    inst = _path()
    res = preprocess(inst)
    (component,) = analyze_components(inst, res)
    assert component.kind is ComponentKind.Q
    assert len(component.hospitals) == len(component.doctors) + 1


def test_open_path_has_no_stable_matching():
    inst = _path()
    assert solve_degree2(inst) is None
    assert all_stable_matchings(inst) == []


def test_closed_path_keeps_preprocessed_matching():
    inst = _path("h1 h2 h3")
    result = solve_degree2(inst)
    assert result is not None
    assert len(result) == 2
    assert is_stable(inst, result)


@pytest.mark.parametrize(
    ("root", "expected"),
    [
        ("h2", {("d1", "h1"), ("d2", "h3")}),
        ("h1", {("d1", "h2"), ("d2", "h3")}),
        ("h3", {("d1", "h1"), ("d2", "h2")}),
    ],
)
def test_tree_matching_xi(root: str, expected: set[tuple[str, str]]):
    assert tree_matching_xi(_q_component(), root) == Matching.from_pairs(expected)


def test_tree_matching_xi_bad_root():
    with pytest.raises(PreconditionError) as excinfo:
        tree_matching_xi(_q_component(), "h9")
    assert excinfo.value.code == "E_BAD_ROOT"


def test_no_pstar_components_means_no_arcs():
    inst = _path()
    res = preprocess(inst)
    assert build_digraph(inst, res, analyze_components(inst, res)).arcs == ()


def test_degree_above_two_rejected():
    inst = parse_instance(
        "doctors: a\nhospitals: x y z\npref a: x > y > z\npref x: a\npref y: a\npref z: a\n"
    )
    assert max_doctor_degree(inst) == 3
    with pytest.raises(PreconditionError) as excinfo:
        solve_degree2(inst)
    assert excinfo.value.code == "E_DEGREE"


def test_agrees_with_oracle_on_random_instances():
    for seed in range(150):
        inst = gen_instance(
            GenParams(
                seed=seed,
                n_doctors=5,
                n_hospitals=4,
                max_degree=2,
                enforce_degree2=True,
                edge_prob=0.6,
                closure_prob=0.4,
            )
        )
        stable = all_stable_matchings(inst)
        result = solve_degree2(inst)
        assert (result is None) == (not stable), f"seed {seed}"
        if result is not None:
            assert is_stable(inst, result)


ORDERS = ("p > q", "q > p", "p = q")


def _complete_two_by_two(orders: tuple[str, ...], closed: tuple[str, ...]) -> Instance:
    doctors, hospitals = ("a", "b"), ("x", "y")
    prefs = {}
    for vertex, order, partners in zip(
        doctors + hospitals, orders, [hospitals, hospitals, doctors, doctors], strict=True
    ):
        p, q = partners
        groups = {"p > q": [[p], [q]], "q > p": [[q], [p]], "p = q": [[p, q]]}[order]
        prefs[vertex] = PrefOrder.from_lists(groups)
    return Instance(doctors=doctors, hospitals=hospitals, closed=frozenset(closed), prefs=prefs)


def test_complete_two_by_two_universe():
    closures = [(), ("x",), ("y",), ("x", "y")]
    checked = 0
    for orders in product(ORDERS, repeat=4):
        for closed in closures:
            inst = _complete_two_by_two(orders, closed)
            stable = all_stable_matchings(inst)
            result = solve_degree2(inst)
            assert (result is None) == (not stable), f"{orders} closed={closed}"
            if result is not None:
                assert is_stable(inst, result)
            if satisfies_star(inst):
                separated = solve_separated(inst)
                assert (separated is None) == (not stable)
                if separated is not None:
                    assert check_doctor_optimal(inst, separated, stable) == []
            checked += 1
    assert checked == 324
