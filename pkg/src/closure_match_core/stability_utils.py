"""closure_match_core/stability_utils.py.

Blocking-edge semantics with the closure rule and the stability predicate.

An edge e = (d, h) outside μ blocks μ when it weakly blocks on both sides and
strongly blocks on at least one. On the hospital side a closed hospital that
is unmatched neither weakly nor strongly blocks.

"""

from collections.abc import Iterable
from dataclasses import dataclass

from closure_match_core.errors import InputError
from closure_match_core.instance_model import Edge, Instance, Matching

__all__ = [
    "BlockReport",
    "all_block_reports",
    "block_report",
    "blocking_edges",
    "is_matching",
    "is_stable",
]


@dataclass(frozen=True)
class BlockReport:
    """Per-side weak/strong blocking flags for one edge."""

    edge: Edge
    weak_on_d: bool
    strong_on_d: bool
    weak_on_h: bool
    strong_on_h: bool

    @property
    def blocks(self) -> bool:
        """Return True iff weak on both sides and strong on at least one."""
        return (self.weak_on_d and self.weak_on_h) and (self.strong_on_d or self.strong_on_h)

    def describe(self) -> str:
        """Return a one-line description used by ``check`` reports."""

        def _side(weak: bool, strong: bool) -> str:
            if strong:
                return "strong"
            return "weak" if weak else "none"

        return (
            f"{self.edge} doctor={_side(self.weak_on_d, self.strong_on_d)} "
            f"hospital={_side(self.weak_on_h, self.strong_on_h)}"
        )


def is_matching(inst: Instance, edges: Iterable[Edge]) -> bool:
    """Return True iff ``edges`` ⊆ E and no vertex repeats."""
    edge_list = list(edges)
    if any(Edge(*e) not in inst.edge_set for e in edge_list):
        return False
    doctors = [e[0] for e in edge_list]
    hospitals = [e[1] for e in edge_list]
    return len(set(doctors)) == len(doctors) and len(set(hospitals)) == len(hospitals)


def _report(inst: Instance, matching: Matching, edge: Edge) -> BlockReport:
    rank_d = inst.doctor_rank[edge]
    rank_h = inst.hospital_rank[edge]
    current_d = inst.rank(edge.doctor, matching.by_doctor.get(edge.doctor))
    partner_h = matching.by_hospital.get(edge.hospital)
    if edge.hospital in inst.closed and partner_h is None:
        weak_h = strong_h = False
    else:
        current_h = inst.rank(edge.hospital, partner_h)
        weak_h = rank_h <= current_h
        strong_h = rank_h < current_h
    return BlockReport(
        edge=edge,
        weak_on_d=rank_d <= current_d,
        strong_on_d=rank_d < current_d,
        weak_on_h=weak_h,
        strong_on_h=strong_h,
    )


def block_report(inst: Instance, matching: Matching, edge: Edge) -> BlockReport:
    """Evaluate the blocking conditions of one edge against μ.

    Args:
        inst (Instance): The instance.
        matching (Matching): The matching μ.
        edge (Edge): An edge of E∖μ.

    Returns:
        BlockReport: The per-side flags.

    Raises:
        InputError: ``E_EDGE_NOT_IN_E`` or ``E_EDGE_IN_MATCHING``.
    """
    edge = Edge(*edge)
    if edge not in inst.edge_set:
        raise InputError("E_EDGE_NOT_IN_E", f"({edge}) is not an edge")
    if edge in matching:
        raise InputError("E_EDGE_IN_MATCHING", f"({edge}) belongs to the matching")
    return _report(inst, matching, edge)


def all_block_reports(inst: Instance, matching: Matching) -> list[BlockReport]:
    """Return reports for every edge of E∖μ that weakly blocks on at least one side."""
    reports = []
    for edge in inst.edges:
        if edge in matching:
            continue
        report = _report(inst, matching, edge)
        if report.weak_on_d or report.weak_on_h:
            reports.append(report)
    return reports


def blocking_edges(inst: Instance, matching: Matching) -> list[BlockReport]:
    """Return reports for exactly the edges that block μ, in canonical order."""
    reports = []
    for edge in inst.edges:
        if edge in matching:
            continue
        report = _report(inst, matching, edge)
        if report.blocks:
            reports.append(report)
    return reports


def is_stable(inst: Instance, matching: Matching) -> bool:
    """Return True iff no edge blocks μ."""
    return not blocking_edges(inst, matching)
