"""closure_match_core/preprocess.py.

Pre-processing: compute a forbidden edge set R and a matching μ such that

- no stable matching contains an edge of R,
- μ ⊆ L := Ch(E∖R),
- μ saturates every doctor with an edge outside R,
- R ∩ block(L) = ∅,
- every doctor prefers (weakly) each forbidden edge to each remaining edge.

The procedure runs two nested loops. The inner loop grows P by the edges
that doctors choose but hospitals reject (Ch_D(E∖P) ∖ Ch(E∖P)) and, when
L = Ch(E∖P) cannot saturate D[E∖P], by L(N) for the minimal Hall violator N.
The outer loop then adds Ch(E∖P) ∩ E(h) for a blocking edge (d, h) in
P ∩ block(Ch(E∖P)), until no such edge exists.

Also provides critical-hospital detection and the shortcut that returns μ
when no critical hospital exists.

"""

from dataclasses import dataclass
from enum import Enum

from closure_match_core import bipartite_utils, log_utils, pref_calculus
from closure_match_core.errors import InvariantViolation
from closure_match_core.instance_model import Edge, Instance, Matching, supported_doctors
from closure_match_core.stability_utils import is_stable

__all__ = [
    "GrowthKind",
    "PreprocessResult",
    "Refused",
    "TraceStep",
    "critical_hospitals",
    "doctor_optimal_when_calm",
    "preprocess",
]

logger = log_utils.logger


class GrowthKind(Enum):
    """Why P grew in a step."""

    DOMINATED = "dominated"
    HALL_VIOLATOR = "hall_violator"
    BLOCK_EDGE = "block_edge"


@dataclass(frozen=True)
class TraceStep:
    """One growth step of P (inner rounds) or R (outer rounds)."""

    t: int
    i: int
    grew_by: GrowthKind
    added: frozenset[Edge]
    b_t: Edge | None = None


@dataclass(frozen=True)
class PreprocessResult:
    """Output of ``preprocess``.

    Attributes:
        forbidden (frozenset[Edge]): R.
        matching (Matching): μ, the maximum matching of the last inner iteration.
        flat (frozenset[Edge]): L = Ch(E∖R).
        trace (tuple[TraceStep, ...]): Growth steps; empty when tracing is off.
        outer_rounds (int): Number of outer rounds executed.
        max_inner_iterations (int): Largest inner iteration count of any round.
    """

    forbidden: frozenset[Edge]
    matching: Matching
    flat: frozenset[Edge]
    trace: tuple[TraceStep, ...] = ()
    outer_rounds: int = 0
    max_inner_iterations: int = 0


@dataclass(frozen=True)
class Refused:
    """Signals that μ may not be returned because critical hospitals exist."""

    critical: frozenset[str]


def _check_bound(counter: int, bound: int, what: str) -> None:
    if counter > bound:
        raise InvariantViolation("E_LOOP_BOUND", f"{what} exceeded {bound} iterations")


def preprocess(inst: Instance, keep_trace: bool = True) -> PreprocessResult:
    """Run the pre-processing procedure on an instance.

    Args:
        inst (Instance): The instance.
        keep_trace (bool): Record every growth step in the result.

    Returns:
        PreprocessResult: R, μ, L and the optional trace.

    Raises:
        InvariantViolation: If a loop bound or the final saturation check fails.
    """
    all_edges = inst.edge_set
    bound = len(all_edges) + 1
    trace: list[TraceStep] = []
    forbidden: frozenset[Edge] = frozenset()
    matching = Matching()
    max_inner = 0
    t = 0

    while True:
        t += 1
        _check_bound(t, bound, "Outer loop")
        p = set(forbidden)
        i = 0
        while True:
            i += 1
            _check_bound(i, bound, "Inner loop")
            rest = all_edges - p
            chosen = pref_calculus.ch_d(inst, rest)
            flat = pref_calculus.ch_h(inst, chosen)
            dominated = chosen - flat
            if dominated:
                p |= dominated
                if keep_trace:
                    trace.append(TraceStep(t, i, GrowthKind.DOMINATED, frozenset(dominated)))
                continue
            result = bipartite_utils.deficiency(flat)
            matching = result.max_matching
            if result.nu < len(supported_doctors(rest)):
                violator = result.minimal_violator
                added = frozenset(e for e in flat if e.doctor in violator)
                if not added:
                    raise InvariantViolation("E_EMPTY_VIOLATOR", "Hall violator adds no edge")
                p |= added
                if keep_trace:
                    trace.append(TraceStep(t, i, GrowthKind.HALL_VIOLATOR, added))
                continue
            break
        max_inner = max(max_inner, i)

        candidates = p & pref_calculus.block_set(inst, flat)
        if not candidates:
            forbidden = frozenset(p)
            break
        b_t = min(candidates)
        added = frozenset(e for e in flat if e.hospital == b_t.hospital)
        # b_t blocks L, so L(h(b_t)) is nonempty.
        if not added:
            raise InvariantViolation(
                "E_EMPTY_BLOCK_HOSPITAL", f"Block edge {b_t} has no L edge at its hospital"
            )
        if keep_trace:
            trace.append(TraceStep(t, i, GrowthKind.BLOCK_EDGE, added, b_t))
        forbidden = frozenset(p | added)

    if len(matching) != len(supported_doctors(all_edges - forbidden)):
        raise InvariantViolation("E_UNSATURATED", "Final matching does not saturate D[E∖R]")
    logger.debug(
        f"Preprocess: |E|={len(all_edges)}, |R|={len(forbidden)}, |mu|={len(matching)}, "
        f"rounds={t}, max_inner={max_inner}"
    )
    return PreprocessResult(
        forbidden=forbidden,
        matching=matching,
        flat=flat,
        trace=tuple(trace),
        outer_rounds=t,
        max_inner_iterations=max_inner,
    )


def critical_hospitals(inst: Instance, res: PreprocessResult) -> frozenset[str]:
    """Return the hospitals h ∉ S with μ(h) = ∅ touched by L or by R."""
    touched = {e.hospital for e in res.flat} | {e.hospital for e in res.forbidden}
    return frozenset(
        h
        for h in inst.hospitals
        if h not in inst.closed and h in touched and h not in res.matching.by_hospital
    )


def doctor_optimal_when_calm(inst: Instance, res: PreprocessResult) -> Matching | Refused:
    """Return μ when no critical hospital exists, otherwise ``Refused``.

    A returned μ is stable and every doctor weakly prefers it to any other
    stable matching.

    Raises:
        InvariantViolation: If the returned μ fails the stability check.
    """
    critical = critical_hospitals(inst, res)
    if critical:
        return Refused(critical)
    if not is_stable(inst, res.matching):
        raise InvariantViolation("E_NOT_STABLE", "Pre-processed matching is not stable")
    return res.matching
