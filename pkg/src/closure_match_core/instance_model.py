"""closure_match_core/instance_model.py.

Core value types for strongly stable matching with closures.

Provides:
- ``Edge``: a (doctor, hospital) pair; tuple order is the canonical order
- ``PrefOrder``: a total preorder stored as ranked tie groups
- ``Instance``: doctors, hospitals, closed hospitals and per-vertex preferences
- ``Matching``: a conflict-free edge set with partner lookup
- edge-set helpers for F(v), D[F] and the hospital neighbourhood of a doctor set

All types are immutable after construction and safe to share.

"""

from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
import math
import re
from typing import NamedTuple

from closure_match_core.errors import InputError

__all__ = [
    "ID_PATTERN",
    "UNMATCHED_RANK",
    "Edge",
    "Instance",
    "Matching",
    "PrefOrder",
    "Relation3",
    "edges_at",
    "group_by_doctor",
    "group_by_hospital",
    "hospital_neighborhood",
    "supported_doctors",
]

ID_PATTERN = re.compile(r"^[A-Za-z0-9_.-]+$")

# Rank of the empty partner: strictly below every listed partner.
UNMATCHED_RANK = math.inf


class Edge(NamedTuple):
    """An edge (d, h) of the bipartite graph."""

    doctor: str
    hospital: str

    def __str__(self) -> str:
        """Return the ``<doctor> <hospital>`` form used in matching files."""
        return f"{self.doctor} {self.hospital}"


class Relation3(Enum):
    """Outcome of comparing two edges (or the empty partner) at a vertex."""

    BETTER = "better"
    TIED = "tied"
    WORSE = "worse"


def _check_id(vertex_id: str) -> None:
    if not ID_PATTERN.match(vertex_id):
        raise InputError("E_SYNTAX", f"Invalid vertex id: {vertex_id!r}")


@dataclass(frozen=True)
class PrefOrder:
    """A preference list with ties.

    ``groups[0]`` is the best tie group. Ranks are 1-based; a partner that is
    not listed (including the empty partner) has rank ``UNMATCHED_RANK``.
    """

    groups: tuple[frozenset[str], ...] = ()

    def __post_init__(self) -> None:
        groups = tuple(frozenset(g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        seen: set[str] = set()
        for group in groups:
            if not group:
                raise InputError("E_SYNTAX", "Preference tie group must not be empty")
            for partner in group:
                if partner in seen:
                    raise InputError("E_DUP_PREF_ENTRY", f"Partner {partner!r} listed twice")
                seen.add(partner)

    @classmethod
    def from_lists(cls, groups: Iterable[Iterable[str]]) -> "PrefOrder":
        """Build a preference order from nested iterables, best group first.

        Raises:
            InputError: With ``E_DUP_PREF_ENTRY`` if a partner repeats, even inside one group.
        """
        frozen = []
        for group in groups:
            members = list(group)
            if len(set(members)) != len(members):
                raise InputError("E_DUP_PREF_ENTRY", f"Partner listed twice in group {members}")
            frozen.append(frozenset(members))
        return cls(tuple(frozen))

    @cached_property
    def rank(self) -> dict[str, int]:
        """Map each listed partner to its 1-based tie-group index."""
        return {p: idx for idx, group in enumerate(self.groups, start=1) for p in group}

    @property
    def partners(self) -> tuple[str, ...]:
        """Return all listed partners in canonical order."""
        return tuple(sorted(self.rank))

    def rank_of(self, partner: str | None) -> float:
        """Return the rank of a partner, ``UNMATCHED_RANK`` for ``None`` or unlisted ids."""
        if partner is None:
            return UNMATCHED_RANK
        return self.rank.get(partner, UNMATCHED_RANK)

    def __len__(self) -> int:
        """Return the number of listed partners."""
        return len(self.rank)


@dataclass(frozen=True)
class Instance:
    """A bipartite preference system G = (D, H; E) with closed hospitals S.

    The edge set is derived from the preference lists. Construction sorts the
    vertex lists, fills in empty preferences for vertices without one, and
    validates every structural rule.

    Raises:
        InputError: ``E_SYNTAX``, ``E_DUP_ID``, ``E_UNKNOWN_ID``,
            ``E_CLOSED_NOT_HOSPITAL`` or ``E_ASYMMETRIC``.
    """

    doctors: tuple[str, ...]
    hospitals: tuple[str, ...]
    closed: frozenset[str] = frozenset()
    prefs: Mapping[str, PrefOrder] = field(default_factory=dict)

    def __post_init__(self) -> None:
        doctors = list(self.doctors)
        hospitals = list(self.hospitals)
        for vertex in doctors + hospitals:
            _check_id(vertex)
        if len(set(doctors)) != len(doctors):
            raise InputError("E_DUP_ID", "Duplicate doctor id")
        if len(set(hospitals)) != len(hospitals):
            raise InputError("E_DUP_ID", "Duplicate hospital id")
        shared = set(doctors) & set(hospitals)
        if shared:
            raise InputError("E_DUP_ID", f"Ids used on both sides: {sorted(shared)}")

        closed = frozenset(self.closed)
        stray = closed - set(hospitals)
        if stray:
            raise InputError("E_CLOSED_NOT_HOSPITAL", f"Closed ids are not hospitals: {sorted(stray)}")

        prefs = dict(self.prefs)
        unknown = set(prefs) - set(doctors) - set(hospitals)
        if unknown:
            raise InputError("E_UNKNOWN_ID", f"Preferences given for unknown ids: {sorted(unknown)}")
        for vertex in doctors + hospitals:
            prefs.setdefault(vertex, PrefOrder())

        object.__setattr__(self, "doctors", tuple(sorted(doctors)))
        object.__setattr__(self, "hospitals", tuple(sorted(hospitals)))
        object.__setattr__(self, "closed", closed)
        object.__setattr__(self, "prefs", prefs)
        self._check_partners()

    def _check_partners(self) -> None:
        doctor_set = set(self.doctors)
        hospital_set = set(self.hospitals)
        for vertex, order in self.prefs.items():
            other_side = hospital_set if vertex in doctor_set else doctor_set
            for partner in order.rank:
                if partner not in other_side:
                    raise InputError(
                        "E_UNKNOWN_ID",
                        f"Preference of {vertex!r} lists {partner!r}, not a vertex of the other side",
                    )
                if vertex not in self.prefs[partner].rank:
                    raise InputError(
                        "E_ASYMMETRIC",
                        f"{vertex!r} lists {partner!r} but {partner!r} does not list {vertex!r}",
                    )

    @cached_property
    def doctor_set(self) -> frozenset[str]:
        """Return D as a set."""
        return frozenset(self.doctors)

    @cached_property
    def hospital_set(self) -> frozenset[str]:
        """Return H as a set."""
        return frozenset(self.hospitals)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """Return E in canonical order."""
        return tuple(Edge(d, h) for d in self.doctors for h in self.prefs[d].partners)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        """Return E as a set."""
        return frozenset(self.edges)

    @cached_property
    def doctor_rank(self) -> dict[Edge, int]:
        """Rank of each edge in its doctor's preference."""
        return {e: self.prefs[e.doctor].rank[e.hospital] for e in self.edges}

    @cached_property
    def hospital_rank(self) -> dict[Edge, int]:
        """Rank of each edge in its hospital's preference."""
        return {e: self.prefs[e.hospital].rank[e.doctor] for e in self.edges}

    @cached_property
    def _incident(self) -> dict[str, tuple[Edge, ...]]:
        incident: dict[str, list[Edge]] = {v: [] for v in self.doctors + self.hospitals}
        for e in self.edges:
            incident[e.doctor].append(e)
            incident[e.hospital].append(e)
        return {v: tuple(sorted(es)) for v, es in incident.items()}

    def is_doctor(self, vertex: str) -> bool:
        """Return True if ``vertex`` is a doctor."""
        return vertex in self.doctor_set

    def is_hospital(self, vertex: str) -> bool:
        """Return True if ``vertex`` is a hospital."""
        return vertex in self.hospital_set

    def incident(self, vertex: str) -> tuple[Edge, ...]:
        """Return E(v) in canonical order."""
        try:
            return self._incident[vertex]
        except KeyError:
            raise InputError("E_UNKNOWN_ID", f"Unknown vertex {vertex!r}") from None

    def degree(self, vertex: str) -> int:
        """Return |E(v)|."""
        return len(self.incident(vertex))

    def neighbors(self, vertex: str) -> tuple[str, ...]:
        """Return the partners listed by ``vertex`` in canonical order."""
        return self.prefs[vertex].partners

    def rank(self, vertex: str, edge: Edge | None) -> float:
        """Return the rank of ``edge`` in the preference of ``vertex``.

        Args:
            vertex (str): Doctor or hospital id.
            edge (Edge | None): An edge of E incident to ``vertex``, or None for no partner.

        Returns:
            float: 1-based rank, or ``UNMATCHED_RANK`` for None.

        Raises:
            InputError: ``E_NOT_INCIDENT`` if ``edge`` is not an edge of E at ``vertex``.
        """
        if edge is None:
            return UNMATCHED_RANK
        if vertex == edge.doctor:
            found = self.doctor_rank.get(edge)
        elif vertex == edge.hospital:
            found = self.hospital_rank.get(edge)
        else:
            found = None
        if found is None:
            raise InputError("E_NOT_INCIDENT", f"Edge ({edge}) is not an edge at {vertex!r}")
        return found


@dataclass(frozen=True)
class Matching:
    """A set of edges in which every vertex appears at most once.

    Raises:
        InputError: ``E_NOT_MATCHING`` if some vertex repeats.
    """

    edges: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        edges = frozenset(Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if len({e.doctor for e in edges}) != len(edges) or len({e.hospital for e in edges}) != len(
            edges
        ):
            raise InputError("E_NOT_MATCHING", "Some vertex appears in two edges")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "Matching":
        """Build a matching from (doctor, hospital) pairs."""
        return cls(frozenset(Edge(d, h) for d, h in pairs))

    @cached_property
    def by_doctor(self) -> dict[str, Edge]:
        """Map each matched doctor to its edge."""
        return {e.doctor: e for e in self.edges}

    @cached_property
    def by_hospital(self) -> dict[str, Edge]:
        """Map each matched hospital to its edge."""
        return {e.hospital: e for e in self.edges}

    def of(self, vertex: str) -> Edge | None:
        """Return μ(v), or None when ``vertex`` is unmatched."""
        edge = self.by_doctor.get(vertex)
        if edge is None:
            edge = self.by_hospital.get(vertex)
        return edge

    def sorted_edges(self) -> list[Edge]:
        """Return the edges in canonical order."""
        return sorted(self.edges)

    def __len__(self) -> int:
        """Return |μ|."""
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        """Iterate edges in canonical order."""
        return iter(self.sorted_edges())

    def __contains__(self, edge: object) -> bool:
        """Return True if ``edge`` belongs to the matching."""
        return edge in self.edges


def edges_at(edges: Iterable[Edge], vertex: str) -> list[Edge]:
    """Return F(v) in canonical order."""
    return sorted(e for e in edges if vertex in (e.doctor, e.hospital))


def supported_doctors(edges: Iterable[Edge]) -> frozenset[str]:
    """Return D[F], the doctors incident to at least one edge of F."""
    return frozenset(e.doctor for e in edges)


def hospital_neighborhood(edges: Iterable[Edge], doctors: Iterable[str]) -> frozenset[str]:
    """Return Γ_F(X), the hospitals joined to some doctor of X by an edge of F."""
    wanted = set(doctors)
    return frozenset(e.hospital for e in edges if e.doctor in wanted)


def group_by_doctor(edges: Iterable[Edge]) -> dict[str, list[Edge]]:
    """Group F by doctor; each list is in canonical order."""
    grouped: dict[str, list[Edge]] = defaultdict(list)
    for e in sorted(edges):
        grouped[e.doctor].append(e)
    return dict(grouped)


def group_by_hospital(edges: Iterable[Edge]) -> dict[str, list[Edge]]:
    """Group F by hospital; each list is in canonical order."""
    grouped: dict[str, list[Edge]] = defaultdict(list)
    for e in sorted(edges):
        grouped[e.hospital].append(e)
    return dict(grouped)
