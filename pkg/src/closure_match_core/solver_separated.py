"""closure_match_core/solver_separated.py.

Decide and construct a stable matching when every doctor strictly prefers
open hospitals (outside S) to closed ones.

Under that assumption a stable matching exists iff pre-processing leaves no
critical hospital, and then the pre-processed μ is stable and doctor-optimal.

"""

from closure_match_core import log_utils
from closure_match_core.errors import InvariantViolation, PreconditionError
from closure_match_core.instance_model import Instance, Matching
from closure_match_core.preprocess import critical_hospitals, preprocess
from closure_match_core.stability_utils import is_stable

__all__ = ["satisfies_star", "solve_separated"]

logger = log_utils.logger


def satisfies_star(inst: Instance) -> bool:
    """Return True iff (d, h') ≻_d (d, h) for every doctor d, h ∈ S and h' ∉ S."""
    for doctor in inst.doctors:
        open_ranks = [inst.doctor_rank[e] for e in inst.incident(doctor) if e.hospital not in inst.closed]
        closed_ranks = [inst.doctor_rank[e] for e in inst.incident(doctor) if e.hospital in inst.closed]
        if open_ranks and closed_ranks and max(open_ranks) >= min(closed_ranks):
            return False
    return True


def solve_separated(inst: Instance) -> Matching | None:
    """Solve an instance that satisfies ``satisfies_star``.

    Args:
        inst (Instance): The instance.

    Returns:
        Matching | None: The doctor-optimal stable matching, or None when no
        stable matching exists.

    Raises:
        PreconditionError: ``E_STAR_VIOLATED`` if the assumption fails.
        InvariantViolation: If the returned matching fails the stability check.
    """
    if not satisfies_star(inst):
        raise PreconditionError(
            "E_STAR_VIOLATED", "Some doctor does not strictly prefer open hospitals to closed ones"
        )
    res = preprocess(inst, keep_trace=False)
    critical = critical_hospitals(inst, res)
    if critical:
        logger.debug(f"Critical hospitals: {sorted(critical)}")
        return None
    if not is_stable(inst, res.matching):
        raise InvariantViolation("E_NOT_STABLE", "Separated solver produced an unstable matching")
    return res.matching
