"""closure_match_core/bipartite_utils.py.

Maximum bipartite matching, the deficiency ρ_F(X) = |Γ_F(X)| − |X| and its
inclusion-wise minimal minimizer (the minimal Hall violator).

Matchings are computed with networkx's Hopcroft-Karp implementation on a
graph whose nodes are integers inserted in canonical order, so results do not
depend on string hashing.

"""

from collections.abc import Iterable
from dataclasses import dataclass

import networkx as nx

from closure_match_core import log_utils
from closure_match_core.errors import InvariantViolation
from closure_match_core.instance_model import (
    Edge,
    Matching,
    hospital_neighborhood,
    supported_doctors,
)

__all__ = [
    "DeficiencyResult",
    "deficiency",
    "max_matching",
    "rho",
]

logger = log_utils.logger


@dataclass(frozen=True)
class DeficiencyResult:
    """Maximum matching and deficiency data for an edge set F.

    Attributes:
        max_matching (Matching): A maximum matching inside F.
        nu (int): Its size.
        min_rho (int): min over X ⊆ D[F] of ρ_F(X); never positive.
        minimal_violator (frozenset[str]): The minimal minimizer of ρ_F.
    """

    max_matching: Matching
    nu: int
    min_rho: int
    minimal_violator: frozenset[str]

    @property
    def hall_condition_holds(self) -> bool:
        """Return True iff every doctor set X ⊆ D[F] has |Γ_F(X)| ≥ |X|."""
        return not self.minimal_violator


def rho(edges: Iterable[Edge], doctors: Iterable[str]) -> int:
    """Return ρ_F(X) = |Γ_F(X)| − |X|."""
    wanted = frozenset(doctors)
    return len(hospital_neighborhood(edges, wanted)) - len(wanted)


def max_matching(edges: Iterable[Edge]) -> Matching:
    """Return a maximum-cardinality matching inside F.

    Args:
        edges (Iterable[Edge]): The edge set F.

    Returns:
        Matching: Deterministic for a given F.
    """
    ordered = sorted(set(edges))
    if not ordered:
        return Matching()
    doctors = sorted({e.doctor for e in ordered})
    hospitals = sorted({e.hospital for e in ordered})
    doctor_ids = {d: i for i, d in enumerate(doctors)}
    hospital_ids = {h: len(doctors) + i for i, h in enumerate(hospitals)}

    graph = nx.Graph()
    graph.add_nodes_from(range(len(doctors) + len(hospitals)))
    graph.add_edges_from((doctor_ids[e.doctor], hospital_ids[e.hospital]) for e in ordered)
    pairs = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=range(len(doctors)))
    return Matching(
        frozenset(
            Edge(doctors[node], hospitals[pairs[node] - len(doctors)])
            for node in range(len(doctors))
            if node in pairs
        )
    )


def deficiency(edges: Iterable[Edge]) -> DeficiencyResult:
    """Compute ν(F), min ρ_F and the minimal minimizer of ρ_F.

    The minimal minimizer is the set of doctors reachable from the doctors a
    maximum matching leaves unmatched, alternating F-edges (doctor to
    hospital) with matching edges (hospital to doctor).

    Args:
        edges (Iterable[Edge]): The edge set F.

    Returns:
        DeficiencyResult: All deficiency data for F.
    """
    edge_set = frozenset(edges)
    matching = max_matching(edge_set)
    doctors = supported_doctors(edge_set)
    unmatched = sorted(doctors - matching.by_doctor.keys())

    alternating = nx.DiGraph()
    alternating.add_nodes_from(doctors)
    alternating.add_edges_from((e.doctor, e.hospital) for e in sorted(edge_set))
    alternating.add_edges_from((e.hospital, e.doctor) for e in matching.sorted_edges())

    reached: set[str] = set(unmatched)
    for doctor in unmatched:
        reached |= nx.descendants(alternating, doctor)
    violator = frozenset(v for v in reached if v in doctors)

    for vertex in reached - violator:
        if vertex not in matching.by_hospital:
            raise InvariantViolation(
                "E_NOT_MAXIMUM", f"Augmenting path ends at free hospital {vertex!r}"
            )

    min_rho = rho(edge_set, violator)
    if min_rho != -len(unmatched) or len(matching) != len(doctors) + min_rho:
        raise InvariantViolation("E_DEFICIENCY", "Deficiency does not match the maximum matching")
    logger.debug(f"Deficiency on {len(edge_set)} edges: nu={len(matching)}, min_rho={min_rho}")
    return DeficiencyResult(
        max_matching=matching,
        nu=len(matching),
        min_rho=min_rho,
        minimal_violator=violator,
    )
