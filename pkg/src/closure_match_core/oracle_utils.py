"""closure_match_core/oracle_utils.py.

Brute-force ground truth for small instances.

Every function here is exact or raises ``BudgetError``; nothing truncates
silently. Budgets default to the values in the bundled solver policy.

"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
import itertools
from typing import Any

from closure_match_core import log_utils
from closure_match_core.bipartite_utils import rho
from closure_match_core.config_utils import policy_value
from closure_match_core.envy_reduction import EnvyInstance, is_envy_free, reduce_envyfree
from closure_match_core.errors import BudgetError
from closure_match_core.instance_model import Edge, Instance, Matching, supported_doctors
from closure_match_core.sat_reduction import B2Formula, is_satisfied
from closure_match_core.stability_utils import is_stable

__all__ = [
    "DEFAULT_MAX_DEFICIENCY_DOCTORS",
    "DEFAULT_MAX_EDGES",
    "DEFAULT_MAX_SAT_VARIABLES",
    "OracleBudget",
    "all_stable_matchings",
    "envyfree_bruteforce",
    "enumerate_matchings",
    "find_stable_matching",
    "minimizers_bruteforce",
    "sat_bruteforce",
]

logger = log_utils.logger

DEFAULT_MAX_EDGES = 22
DEFAULT_MAX_DEFICIENCY_DOCTORS = 12
DEFAULT_MAX_SAT_VARIABLES = 20


@dataclass(frozen=True)
class OracleBudget:
    """Brute-force limits, one per oracle family.

    Attributes:
        max_edges (int): Largest |E| for matching enumeration.
        max_deficiency_doctors (int): Largest |D[F]| for subset enumeration of ρ.
        max_sat_variables (int): Largest n for assignment enumeration.
    """

    max_edges: int = DEFAULT_MAX_EDGES
    max_deficiency_doctors: int = DEFAULT_MAX_DEFICIENCY_DOCTORS
    max_sat_variables: int = DEFAULT_MAX_SAT_VARIABLES

    @classmethod
    def from_policy(cls, policy: dict[str, Any]) -> "OracleBudget":
        """Read the ``oracle`` section of a loaded solver policy."""
        return cls(
            max_edges=int(policy_value(policy, "oracle.max_edges", DEFAULT_MAX_EDGES)),
            max_deficiency_doctors=int(
                policy_value(
                    policy, "oracle.max_deficiency_doctors", DEFAULT_MAX_DEFICIENCY_DOCTORS
                )
            ),
            max_sat_variables=int(
                policy_value(policy, "oracle.max_sat_variables", DEFAULT_MAX_SAT_VARIABLES)
            ),
        )


def _require_budget(size: int, budget: int, what: str) -> None:
    if size > budget:
        raise BudgetError("E_BUDGET", f"{size} {what} exceeds the oracle budget of {budget}")


def enumerate_matchings(inst: Instance, budget: int = DEFAULT_MAX_EDGES) -> Iterator[Matching]:
    """Yield every matching of the instance exactly once.

    Edges are decided in canonical order, including an edge before excluding it.

    Args:
        inst (Instance): The instance.
        budget (int): Maximum |E|.

    Returns:
        Iterator[Matching]: A single-consumer stream of matchings.

    Raises:
        BudgetError: ``E_BUDGET`` if |E| exceeds the budget.
    """
    _require_budget(len(inst.edges), budget, "edges")
    edges = inst.edges
    chosen: list[Edge] = []
    used: set[str] = set()

    def _walk(index: int) -> Iterator[Matching]:
        if index == len(edges):
            yield Matching(frozenset(chosen))
            return
        edge = edges[index]
        if edge.doctor not in used and edge.hospital not in used:
            chosen.append(edge)
            used.update(edge)
            yield from _walk(index + 1)
            chosen.pop()
            used.difference_update(edge)
        yield from _walk(index + 1)

    return _walk(0)


def _canonical_key(matching: Matching) -> tuple[Edge, ...]:
    return tuple(matching.sorted_edges())


def all_stable_matchings(inst: Instance, budget: int = DEFAULT_MAX_EDGES) -> list[Matching]:
    """Return every stable matching, sorted by their sorted edge lists.

    Raises:
        BudgetError: ``E_BUDGET`` if |E| exceeds the budget.
    """
    stable = [m for m in enumerate_matchings(inst, budget) if is_stable(inst, m)]
    logger.debug(f"Oracle found {len(stable)} stable matchings over {len(inst.edges)} edges")
    return sorted(stable, key=_canonical_key)


def find_stable_matching(inst: Instance, budget: int = DEFAULT_MAX_EDGES) -> Matching | None:
    """Return the first stable matching in enumeration order, or None.

    Raises:
        BudgetError: ``E_BUDGET`` if |E| exceeds the budget.
    """
    return next((m for m in enumerate_matchings(inst, budget) if is_stable(inst, m)), None)


def envyfree_bruteforce(envy: EnvyInstance, budget: int = DEFAULT_MAX_EDGES) -> Matching | None:
    """Return the first doctor-saturating envy-free matching, or None.

    Stability is not consulted; envy is evaluated directly on doctor preferences.

    Raises:
        BudgetError: ``E_BUDGET`` if the acceptability graph has too many edges.
    """
    inst = reduce_envyfree(envy)
    for matching in enumerate_matchings(inst, budget):
        if len(matching) == len(envy.doctors) and is_envy_free(envy, matching):
            return matching
    return None


def sat_bruteforce(
    formula: B2Formula, max_variables: int = DEFAULT_MAX_SAT_VARIABLES
) -> tuple[int, ...] | None:
    """Return the lexicographically first satisfying 0/1 assignment, or None.

    Raises:
        BudgetError: ``E_BUDGET`` if the formula has more than ``max_variables`` variables.
    """
    _require_budget(formula.n, max_variables, "variables")
    for phi in itertools.product((0, 1), repeat=formula.n):
        if is_satisfied(formula, phi):
            return phi
    return None


def minimizers_bruteforce(
    edges: Iterable[Edge], budget: int = DEFAULT_MAX_DEFICIENCY_DOCTORS
) -> tuple[int, list[frozenset[str]]]:
    """Evaluate ρ_F on every subset of D[F].

    Args:
        edges (Iterable[Edge]): The edge set F.
        budget (int): Maximum |D[F]|.

    Returns:
        tuple[int, list[frozenset[str]]]: The minimum of ρ_F and every subset
        attaining it, ordered by size and then lexicographically.

    Raises:
        BudgetError: ``E_BUDGET`` if |D[F]| exceeds the budget.
    """
    edge_list = list(edges)
    doctors = sorted(supported_doctors(edge_list))
    _require_budget(len(doctors), budget, "doctors")
    best = 0
    minimizers: list[frozenset[str]] = []
    for size in range(len(doctors) + 1):
        for subset in itertools.combinations(doctors, size):
            value = rho(edge_list, subset)
            if value < best or not minimizers:
                best = value
                minimizers = [frozenset(subset)]
            elif value == best:
                minimizers.append(frozenset(subset))
    return best, minimizers
