"""closure_match_core/envy_reduction.py.

Envy-free assignment through stable matching with closures.

Doctors rank hospitals (with ties); hospitals have no preferences. A matching
that saturates every doctor is envy-free when no doctor strictly prefers the
hospital of another doctor to its own. Closing every hospital and making
every hospital indifferent turns envy pairs into blocking edges, so the
separated solver decides the problem.

"""

from collections.abc import Mapping
from dataclasses import dataclass, field

from closure_match_core.errors import InputError, InvariantViolation
from closure_match_core.instance_model import ID_PATTERN, Instance, Matching, PrefOrder
from closure_match_core.solver_separated import solve_separated

__all__ = [
    "EnvyInstance",
    "envy_pairs",
    "is_envy_free",
    "reduce_envyfree",
    "solve_envyfree",
]


@dataclass(frozen=True)
class EnvyInstance:
    """Doctors with preferences over acceptable hospitals.

    Raises:
        InputError: ``E_SYNTAX``, ``E_DUP_ID`` or ``E_UNKNOWN_ID``.
    """

    doctors: tuple[str, ...]
    hospitals: tuple[str, ...]
    prefs: Mapping[str, PrefOrder] = field(default_factory=dict)

    def __post_init__(self) -> None:
        doctors = list(self.doctors)
        hospitals = list(self.hospitals)
        for vertex in doctors + hospitals:
            if not ID_PATTERN.match(vertex):
                raise InputError("E_SYNTAX", f"Invalid vertex id: {vertex!r}")
        if len(set(doctors)) != len(doctors) or len(set(hospitals)) != len(hospitals):
            raise InputError("E_DUP_ID", "Duplicate id")
        if set(doctors) & set(hospitals):
            raise InputError("E_DUP_ID", "Ids used on both sides")
        prefs = dict(self.prefs)
        for vertex, order in prefs.items():
            if vertex in hospitals:
                raise InputError("E_SYNTAX", f"Hospital {vertex!r} may not have a preference")
            if vertex not in doctors:
                raise InputError("E_UNKNOWN_ID", f"Preference given for unknown doctor {vertex!r}")
            stray = set(order.rank) - set(hospitals)
            if stray:
                raise InputError("E_UNKNOWN_ID", f"{vertex!r} lists unknown hospitals {sorted(stray)}")
        for doctor in doctors:
            prefs.setdefault(doctor, PrefOrder())
        object.__setattr__(self, "doctors", tuple(sorted(doctors)))
        object.__setattr__(self, "hospitals", tuple(sorted(hospitals)))
        object.__setattr__(self, "prefs", prefs)


def reduce_envyfree(envy: EnvyInstance) -> Instance:
    """Build the matching instance with S = H and all-tie hospital preferences."""
    applicants: dict[str, list[str]] = {h: [] for h in envy.hospitals}
    for doctor in envy.doctors:
        for hospital in envy.prefs[doctor].rank:
            applicants[hospital].append(doctor)
    prefs = dict(envy.prefs)
    for hospital, doctors in applicants.items():
        prefs[hospital] = PrefOrder.from_lists([doctors] if doctors else [])
    return Instance(
        doctors=envy.doctors,
        hospitals=envy.hospitals,
        closed=frozenset(envy.hospitals),
        prefs=prefs,
    )


def envy_pairs(envy: EnvyInstance, matching: Matching) -> list[tuple[str, str]]:
    """Return every (d, d') where d strictly prefers the hospital of d' to its own."""
    pairs = []
    for doctor in envy.doctors:
        order = envy.prefs[doctor]
        own = matching.by_doctor.get(doctor)
        own_rank = order.rank_of(own.hospital if own else None)
        for other in envy.doctors:
            theirs = matching.by_doctor.get(other)
            if other == doctor or theirs is None:
                continue
            if order.rank_of(theirs.hospital) < own_rank:
                pairs.append((doctor, other))
    return pairs


def is_envy_free(envy: EnvyInstance, matching: Matching) -> bool:
    """Return True iff no doctor envies another."""
    return not envy_pairs(envy, matching)


def solve_envyfree(envy: EnvyInstance) -> Matching | None:
    """Return a doctor-saturating envy-free matching, or None if none exists.

    Raises:
        InvariantViolation: If the separated solver reports no stable matching,
            which cannot happen when every hospital is closed.
    """
    matching = solve_separated(reduce_envyfree(envy))
    if matching is None:
        raise InvariantViolation("E_NO_MATCHING", "Separated solver refused an all-closed instance")
    if len(matching) == len(envy.doctors):
        return matching
    return None
