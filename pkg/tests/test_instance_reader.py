"""
Test cases for closure-match-core.instance_reader module.
"""

from pathlib import Path

import pytest

from closure_match_core.errors import InputError
from closure_match_core.instance_model import Edge, Matching
from closure_match_core.instance_reader import (
    parse_envy_instance,
    parse_instance,
    parse_matching,
    read_instance_file,
    read_text_file,
)

SMALLEST = "doctors: a\nhospitals: x\npref a: x\npref x: a\n"


def test_parse_smallest_instance():
    inst = parse_instance(SMALLEST)
    assert inst.edges == (Edge("a", "x"),)
    assert inst.closed == frozenset()


def test_parse_closed_and_ties():
    inst = parse_instance(
        """
        # two doctors, one closed hospital
        doctors: a b
        hospitals: x y
        closed: y      # trailing comment

        pref a: x = y
        pref b: x
        pref x: b > a
        pref y: a
        """
    )
    assert inst.closed == {"y"}
    assert inst.prefs["a"].groups == (frozenset({"x", "y"}),)
    assert inst.prefs["x"].rank == {"b": 1, "a": 2}


def test_missing_pref_line_means_empty_list():
    inst = parse_instance("doctors: a\nhospitals: x\n")
    assert inst.edges == ()


@pytest.mark.parametrize(
    ("text", "code"),
    [
        ("doctors: a\npref a:\n", "E_SYNTAX"),
        ("doctors: a\ndoctors: b\nhospitals: x\n", "E_SYNTAX"),
        ("doctors: a\nhospitals: x\nwards: x\n", "E_SYNTAX"),
        ("doctors: a\nhospitals: x\npref a: x\npref a: x\npref x: a\n", "E_SYNTAX"),
        ("doctors: a\nhospitals: x\npref a: x >\npref x: a\n", "E_SYNTAX"),
        ("doctors: a\nhospitals: x\nno colon here\n", "E_SYNTAX"),
        ("doctors: a\nhospitals: x\npref a: x\n", "E_ASYMMETRIC"),
        ("doctors: a\nhospitals: x\npref a: z\n", "E_UNKNOWN_ID"),
        ("doctors: a\nhospitals: x\npref z: x\n", "E_UNKNOWN_ID"),
        ("doctors: a a\nhospitals: x\n", "E_DUP_ID"),
        ("doctors: a\nhospitals: x\nclosed: q\n", "E_CLOSED_NOT_HOSPITAL"),
        ("doctors: a\nhospitals: x\npref a: x > x\npref x: a\n", "E_DUP_PREF_ENTRY"),
    ],
)
def test_parse_instance_errors(text: str, code: str):
    with pytest.raises(InputError) as excinfo:
        parse_instance(text)
    assert excinfo.value.code == code


def test_parse_envy_instance():
    envy = parse_envy_instance("doctors: a b\nhospitals: x y\npref a: x > y\npref b: y\n")
    assert envy.doctors == ("a", "b")
    assert envy.prefs["b"].rank == {"y": 1}


def test_parse_envy_instance_rejects_closed():
    with pytest.raises(InputError) as excinfo:
        parse_envy_instance("doctors: a\nhospitals: x\nclosed: x\n")
    assert excinfo.value.code == "E_SYNTAX"


def test_parse_matching_reads_solve_output():
    inst = parse_instance("doctors: a b\nhospitals: x y\npref a: x\npref b: y\npref x: a\npref y: b\n")
    text = "status: stable\n# method: separated\na x\nb y\n"
    assert parse_matching(text, inst) == Matching.from_pairs([("a", "x"), ("b", "y")])


@pytest.mark.parametrize(
    ("text", "code"),
    [
        ("a x y\n", "E_SYNTAX"),
        ("a y\n", "E_EDGE_NOT_IN_E"),
        ("a x\na x\n", "E_NOT_MATCHING"),
    ],
)
def test_parse_matching_errors(text: str, code: str):
    inst = parse_instance("doctors: a b\nhospitals: x\npref a: x\npref b: x\npref x: a = b\n")
    with pytest.raises(InputError) as excinfo:
        parse_matching(text, inst)
    assert excinfo.value.code == code


def test_parse_matching_repeated_vertex():
    with pytest.raises(InputError) as excinfo:
        parse_matching("a x\nb x\n")
    assert excinfo.value.code == "E_NOT_MATCHING"


def test_read_instance_file(tmp_path: Path):
    path = tmp_path / "one.inst"
    path.write_text(SMALLEST, encoding="utf-8")
    assert read_instance_file(path).edges == (Edge("a", "x"),)


def test_read_text_file_missing(tmp_path: Path):
    with pytest.raises(InputError) as excinfo:
        read_text_file(tmp_path / "missing.inst")
    assert excinfo.value.code == "E_IO"


def test_read_text_file_rejects_invalid_utf8(tmp_path: Path):
    path = tmp_path / "binary.inst"
    path.write_bytes(b"\xff\xfe")
    with pytest.raises(InputError) as excinfo:
        read_text_file(path)
    assert excinfo.value.code == "E_SYNTAX"
