"""closure_match_core/pref_calculus.py.

Preference calculus over edge sets: vertex comparison, the choice
operators Ch_v / Ch_D / Ch_H / Ch, flatness, comparison of an edge against a
flat set, and block(F).

All functions are pure. Edge sets are any iterable of ``Edge``; results are
frozensets.

"""

from collections.abc import Iterable
from enum import Enum
from typing import Literal

from closure_match_core.errors import InputError
from closure_match_core.instance_model import Edge, Instance, Relation3

__all__ = [
    "FlatRelation",
    "block_set",
    "ch",
    "ch_d",
    "ch_h",
    "ch_v",
    "compare_at_vertex",
    "is_flat",
    "rel_to_flat",
]

Side = Literal["doctor", "hospital"]


class FlatRelation(Enum):
    """Relation of an edge to a flat set at one of its endpoints.

    On the doctor side SUCC means e ≻_d F (including F(d) = ∅) and SIM means
    e ∼_d F. On the hospital side SUCC means e ≻_h F and SIM means e ∼_h F,
    so ``e ≿_h F`` holds for both. WORSE covers everything else.
    """

    SUCC = "succ"
    SIM = "sim"
    WORSE = "worse"


def compare_at_vertex(inst: Instance, vertex: str, e: Edge | None, f: Edge | None) -> Relation3:
    """Compare two edges (or the empty partner) under ≿_v.

    Args:
        inst (Instance): The instance.
        vertex (str): The vertex whose preference is used.
        e (Edge | None): Left operand; None stands for ∅.
        f (Edge | None): Right operand; None stands for ∅.

    Returns:
        Relation3: BETTER iff e ≻_v f, TIED iff e ∼_v f, WORSE otherwise.

    Raises:
        InputError: ``E_NOT_INCIDENT`` if an operand is not an edge at ``vertex``.
    """
    rank_e = inst.rank(vertex, e)
    rank_f = inst.rank(vertex, f)
    if rank_e < rank_f:
        return Relation3.BETTER
    if rank_e == rank_f:
        return Relation3.TIED
    return Relation3.WORSE


def ch_v(inst: Instance, vertex: str, edges: Iterable[Edge]) -> frozenset[Edge]:
    """Return the ≿_v-maximal edges of F(v)."""
    if inst.is_doctor(vertex):
        local = [e for e in edges if e.doctor == vertex]
        ranks = inst.doctor_rank
    else:
        local = [e for e in edges if e.hospital == vertex]
        ranks = inst.hospital_rank
    if not local:
        return frozenset()
    best = min(ranks[e] for e in local)
    return frozenset(e for e in local if ranks[e] == best)


def _best_per_key(edges: Iterable[Edge], ranks: dict[Edge, int], key_index: int) -> frozenset[Edge]:
    best: dict[str, int] = {}
    kept: dict[str, list[Edge]] = {}
    for e in edges:
        key = e[key_index]
        rank = ranks[e]
        current = best.get(key)
        if current is None or rank < current:
            best[key] = rank
            kept[key] = [e]
        elif rank == current:
            kept[key].append(e)
    return frozenset(e for group in kept.values() for e in group)


def ch_d(inst: Instance, edges: Iterable[Edge]) -> frozenset[Edge]:
    """Return Ch_D(F): the union of Ch_d(F) over all doctors."""
    return _best_per_key(edges, inst.doctor_rank, 0)


def ch_h(inst: Instance, edges: Iterable[Edge]) -> frozenset[Edge]:
    """Return Ch_H(F): the union of Ch_h(F) over all hospitals."""
    return _best_per_key(edges, inst.hospital_rank, 1)


def ch(inst: Instance, edges: Iterable[Edge]) -> frozenset[Edge]:
    """Return Ch(F) = Ch_H(Ch_D(F)); the result is always flat."""
    return ch_h(inst, ch_d(inst, edges))


def _representative_ranks(
    inst: Instance, edges: Iterable[Edge]
) -> tuple[dict[str, int], dict[str, int]] | None:
    """Return the common rank of F(v) at every vertex, or None if F is not flat."""
    at_doctor: dict[str, int] = {}
    at_hospital: dict[str, int] = {}
    for e in edges:
        rank_d = inst.doctor_rank[e]
        if at_doctor.setdefault(e.doctor, rank_d) != rank_d:
            return None
        rank_h = inst.hospital_rank[e]
        if at_hospital.setdefault(e.hospital, rank_h) != rank_h:
            return None
    return at_doctor, at_hospital


def is_flat(inst: Instance, edges: Iterable[Edge]) -> bool:
    """Return True iff all edges of F sharing a vertex are tied at that vertex."""
    return _representative_ranks(inst, edges) is not None


def _flat_ranks(inst: Instance, edges: Iterable[Edge]) -> tuple[dict[str, int], dict[str, int]]:
    ranks = _representative_ranks(inst, edges)
    if ranks is None:
        raise InputError("E_NOT_FLAT", "Edge set is not flat")
    return ranks


def rel_to_flat(inst: Instance, edge: Edge, side: Side, edges: Iterable[Edge]) -> FlatRelation:
    """Compare ``edge`` with a flat set F at one of its endpoints.

    Flatness makes the choice of representative of F(v) irrelevant.

    Args:
        inst (Instance): The instance.
        edge (Edge): An edge of E outside F.
        side (str): ``"doctor"`` or ``"hospital"``.
        edges (Iterable[Edge]): The flat set F.

    Returns:
        FlatRelation: SUCC, SIM or WORSE.

    Raises:
        InputError: ``E_NOT_FLAT`` if F is not flat, ``E_EMPTY_FH`` on the
            hospital side when F(h) is empty, ``E_EDGE_NOT_IN_E`` if ``edge`` is not in E.
    """
    if edge not in inst.edge_set:
        raise InputError("E_EDGE_NOT_IN_E", f"({edge}) is not an edge")
    at_doctor, at_hospital = _flat_ranks(inst, edges)
    if side == "doctor":
        rep = at_doctor.get(edge.doctor)
        if rep is None:
            return FlatRelation.SUCC
        own = inst.doctor_rank[edge]
    else:
        rep = at_hospital.get(edge.hospital)
        if rep is None:
            raise InputError("E_EMPTY_FH", f"F has no edge at hospital {edge.hospital!r}")
        own = inst.hospital_rank[edge]
    if own < rep:
        return FlatRelation.SUCC
    if own == rep:
        return FlatRelation.SIM
    return FlatRelation.WORSE


def block_set(inst: Instance, edges: Iterable[Edge]) -> frozenset[Edge]:
    """Return block(F) for a flat edge set F.

    An edge e = (d, h) of E outside F is in block(F) iff F(h) is nonempty and
    either e ≻_d F and e ≿_h F, or e ∼_d F and e ≻_h F.

    Raises:
        InputError: ``E_NOT_FLAT`` if F is not flat.
    """
    flat = frozenset(edges)
    at_doctor, at_hospital = _flat_ranks(inst, flat)
    blocking = []
    for e in inst.edges:
        if e in flat:
            continue
        rep_h = at_hospital.get(e.hospital)
        if rep_h is None:
            continue
        rep_d = at_doctor.get(e.doctor)
        rank_d = inst.doctor_rank[e]
        rank_h = inst.hospital_rank[e]
        if rep_d is None or rank_d < rep_d:
            if rank_h <= rep_h:
                blocking.append(e)
        elif rank_d == rep_d and rank_h < rep_h:
            blocking.append(e)
    return frozenset(blocking)
