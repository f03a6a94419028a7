"""closure_match_core/verify_suites.py.

Seeded property suites that compare every solver against the brute-force
oracle.

Each mode has a generator (seeded input plus its serialized text) and a
checker (list of issues). ``run_verify`` drives ``trials`` independent trials
with sub-seeds from ``derive_seed`` and summarizes the outcome.

"""

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Any

from closure_match_core import log_utils
from closure_match_core.bipartite_utils import deficiency, rho
from closure_match_core.contract_checks import (
    check_doctor_optimal,
    check_forbidden_unused,
    check_preprocess_contract,
)
from closure_match_core.envy_reduction import (
    EnvyInstance,
    is_envy_free,
    reduce_envyfree,
    solve_envyfree,
)
from closure_match_core.errors import ClosureMatchError, InvariantViolation
from closure_match_core.instance_generator import GenParams, gen_b2sat, gen_envy_instance, gen_instance
from closure_match_core.instance_model import Edge, Instance, Matching, supported_doctors
from closure_match_core.instance_writer import serialize_envy_instance, serialize_instance
from closure_match_core.oracle_utils import (
    OracleBudget,
    all_stable_matchings,
    enumerate_matchings,
    envyfree_bruteforce,
    minimizers_bruteforce,
    sat_bruteforce,
)
from closure_match_core.preprocess import critical_hospitals, preprocess
from closure_match_core.rng_utils import SplitMix64, derive_seed
from closure_match_core.sat_reduction import (
    B2Formula,
    assignment_to_matching,
    canonical_candidates,
    format_b2sat,
    is_satisfied,
    matching_to_assignment,
    reduce_sat,
)
from closure_match_core.solver_degree2 import (
    ComponentKind,
    analyze_components,
    build_digraph,
    solve_degree2,
)
from closure_match_core.solver_separated import solve_separated
from closure_match_core.stability_utils import is_stable

__all__ = [
    "VerifyMode",
    "VerifySummary",
    "run_verify",
]

logger = log_utils.logger

SUBMODULAR_PAIRS_PER_TRIAL = 10
BACKWARD_CHECK_MAX_VARIABLES = 3


class VerifyMode(str, Enum):
    """Property suites available to ``verify``."""

    PREPROCESS = "preprocess"
    SEPARATED = "separated"
    DEGREE2 = "degree2"
    ENVY = "envy"
    SAT = "sat"
    BIPARTITE = "bipartite"


@dataclass
class VerifySummary:
    """Outcome of a verify run.

    Attributes:
        mode (str): Suite name.
        trials (int): Trials executed.
        seed (int): Master seed.
        passed (int): Trials without issues.
        failed (int): Trials with issues or an internal error.
        internal_errors (int): Trials that raised ``InvariantViolation``.
        first_counterexample (str | None): Serialized input of the first failing trial.
        first_messages (list[str]): Issues reported by the first failing trial.
    """

    mode: str
    trials: int
    seed: int
    passed: int = 0
    failed: int = 0
    internal_errors: int = 0
    first_counterexample: str | None = None
    first_messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Return True iff every trial passed."""
        return self.failed == 0

    def to_dict(self) -> dict[str, Any]:
        """Return the summary as plain data (no timestamps)."""
        return {
            "mode": self.mode,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "internal_errors": self.internal_errors,
            "first_counterexample": self.first_counterexample,
            "first_messages": list(self.first_messages),
        }


@dataclass(frozen=True)
class _Suite:
    generate: Callable[[int, OracleBudget], tuple[Any, str]]
    check: Callable[[Any, OracleBudget], list[str]]


def _small_params(rng: SplitMix64, budget: OracleBudget, **overrides: Any) -> GenParams:
    values: dict[str, Any] = {
        "seed": rng.next_u64(),
        "n_doctors": 1 + rng.below(5),
        "n_hospitals": 1 + rng.below(5),
        "edge_prob": 0.3 + 0.5 * rng.random(),
        "tie_prob": 0.5 * rng.random(),
        "closure_prob": 0.5 * rng.random(),
        "max_edges": min(10, budget.max_edges),
    }
    values.update(overrides)
    return GenParams(**values)


def _oracle_agreement(
    inst: Instance, answer: Matching | None, budget: OracleBudget, solver: str
) -> tuple[list[str], list[Matching]]:
    stable = all_stable_matchings(inst, budget.max_edges)
    issues = []
    if (answer is None) != (not stable):
        found = "none" if answer is None else "a matching"
        issues.append(f"{solver} returned {found} but the oracle found {len(stable)} stable matchings")
    if answer is not None and not is_stable(inst, answer):
        issues.append(f"{solver} returned an unstable matching {answer.sorted_edges()}")
    return issues, stable


# preprocess


def _gen_preprocess(sub_seed: int, budget: OracleBudget) -> tuple[Instance, str]:
    inst = gen_instance(_small_params(SplitMix64(sub_seed), budget))
    return inst, serialize_instance(inst)


def _check_preprocess(inst: Instance, budget: OracleBudget) -> list[str]:
    res = preprocess(inst)
    issues = check_preprocess_contract(inst, res)
    bound = len(inst.edges) + 1
    if res.outer_rounds > bound or res.max_inner_iterations > bound:
        issues.append(f"Iteration counters exceed |E|+1 = {bound}")
    stable = all_stable_matchings(inst, budget.max_edges)
    issues.extend(check_forbidden_unused(res, stable))
    if not critical_hospitals(inst, res):
        if not is_stable(inst, res.matching):
            issues.append("No critical hospital but μ is not stable")
        issues.extend(check_doctor_optimal(inst, res.matching, stable))
    return issues


# separated


def _gen_separated(sub_seed: int, budget: OracleBudget) -> tuple[Instance, str]:
    rng = SplitMix64(sub_seed)
    overrides: dict[str, Any] = {"enforce_star": True}
    if rng.chance(0.2):
        overrides["closure_prob"] = 0.0
    inst = gen_instance(_small_params(rng, budget, **overrides))
    return inst, serialize_instance(inst)


def _check_separated(inst: Instance, budget: OracleBudget) -> list[str]:
    answer = solve_separated(inst)
    issues, stable = _oracle_agreement(inst, answer, budget, "solve_separated")
    if answer is not None:
        issues.extend(check_doctor_optimal(inst, answer, stable))
    return issues


# degree2


def _gen_degree2(sub_seed: int, budget: OracleBudget) -> tuple[Instance, str]:
    rng = SplitMix64(sub_seed)
    params = _small_params(
        rng,
        budget,
        n_doctors=1 + rng.below(6),
        n_hospitals=1 + rng.below(6),
        max_degree=2,
        enforce_degree2=True,
        max_edges=min(12, budget.max_edges),
    )
    inst = gen_instance(params)
    return inst, serialize_instance(inst)


def _check_components(inst: Instance) -> list[str]:
    res = preprocess(inst, keep_trace=False)
    components = analyze_components(inst, res)
    issues = []
    for c in components:
        if len(c.doctors) + len(c.hospitals) < 2:
            continue
        if len(c.doctors) > len(c.hospitals):
            issues.append(f"{c.label()} has more doctors than hospitals")
        if c.kind is ComponentKind.Q and len(c.hospitals) != len(c.doctors) + 1:
            issues.append(f"{c.label()} is Q but |H_X| != |D_X| + 1")
        if c.kind in (ComponentKind.P, ComponentKind.PSTAR) and len(c.hospitals) != len(c.doctors):
            issues.append(f"{c.label()} is P but |H_X| != |D_X|")
    digraph = build_digraph(inst, res, components)
    heads = [head for _, head in digraph.arcs]
    if len(heads) != len(set(heads)):
        issues.append("Closure digraph has a node with in-degree above one")
    if set(heads) & digraph.v_plus:
        issues.append("Closure digraph has an arc into a source")
    return issues


def _check_degree2(inst: Instance, budget: OracleBudget) -> list[str]:
    answer = solve_degree2(inst)
    issues, _ = _oracle_agreement(inst, answer, budget, "solve_degree2")
    issues.extend(_check_components(inst))
    return issues


# envy


def _gen_envy(sub_seed: int, budget: OracleBudget) -> tuple[EnvyInstance, str]:
    envy = gen_envy_instance(_small_params(SplitMix64(sub_seed), budget))
    return envy, serialize_envy_instance(envy)


def _check_envy(envy: EnvyInstance, budget: OracleBudget) -> list[str]:
    issues = []
    answer = solve_envyfree(envy)
    expected = envyfree_bruteforce(envy, budget.max_edges)
    if (answer is None) != (expected is None):
        issues.append(f"solve_envyfree answer {answer} disagrees with the oracle ({expected})")
    if answer is not None:
        if len(answer) != len(envy.doctors):
            issues.append("Returned matching does not saturate every doctor")
        if not is_envy_free(envy, answer):
            issues.append(f"Returned matching {answer.sorted_edges()} has an envy pair")

    inst = reduce_envyfree(envy)
    for matching in enumerate_matchings(inst, budget.max_edges):
        if len(matching) == len(envy.doctors) and is_stable(inst, matching) != is_envy_free(envy, matching):
            issues.append(f"Blocking and envy disagree on {matching.sorted_edges()}")
            break
    return issues


# sat


def _gen_sat(sub_seed: int, budget: OracleBudget) -> tuple[B2Formula, str]:
    rng = SplitMix64(sub_seed)
    n = 3 if rng.chance(0.5) else 6
    formula = gen_b2sat(n, rng.next_u64())
    return formula, format_b2sat(formula)


def _check_sat(formula: B2Formula, budget: OracleBudget) -> list[str]:
    issues = []
    inst, mapping = reduce_sat(formula)
    phi = sat_bruteforce(formula, budget.max_sat_variables)
    if phi is not None:
        matching = assignment_to_matching(formula, phi, mapping, inst)
        decoded = matching_to_assignment(mapping, matching)
        if not is_satisfied(formula, decoded):
            issues.append(f"Decoded assignment {decoded} does not satisfy the formula")
    if formula.n <= BACKWARD_CHECK_MAX_VARIABLES:
        found = False
        for candidate in canonical_candidates(formula, mapping):
            if is_stable(inst, candidate):
                found = True
                if not is_satisfied(formula, matching_to_assignment(mapping, candidate)):
                    issues.append("A stable candidate decodes to a falsifying assignment")
                    break
        if found != (phi is not None):
            issues.append(f"Stable candidate found={found} but satisfiable={phi is not None}")
    return issues


# bipartite


def _gen_bipartite(
    sub_seed: int, budget: OracleBudget
) -> tuple[tuple[frozenset[Edge], int], str]:
    rng = SplitMix64(sub_seed)
    # D[F] stays within the subset oracle.
    doctor_cap = max(1, min(8, budget.max_deficiency_doctors))
    params = _small_params(
        rng,
        budget,
        n_doctors=1 + rng.below(doctor_cap),
        n_hospitals=1 + rng.below(8),
        max_edges=None,
    )
    edges = frozenset(gen_instance(params).edges)
    text = "".join(f"{e}\n" for e in sorted(edges))
    return (edges, rng.next_u64()), text


def _check_bipartite(data: tuple[frozenset[Edge], int], budget: OracleBudget) -> list[str]:
    edges, pair_seed = data
    issues = []
    result = deficiency(edges)
    doctors = sorted(supported_doctors(edges))
    min_rho, minimizers = minimizers_bruteforce(edges, budget.max_deficiency_doctors)
    if result.min_rho != min_rho:
        issues.append(f"min ρ {result.min_rho} differs from oracle {min_rho}")
    if result.nu != len(doctors) + min_rho:
        issues.append(f"ν = {result.nu} but |D[F]| + min ρ = {len(doctors) + min_rho}")
    smallest = reduce(frozenset.intersection, minimizers)
    if result.minimal_violator != smallest:
        issues.append(
            f"Minimal violator {sorted(result.minimal_violator)} != oracle {sorted(smallest)}"
        )
    family = set(minimizers)
    for x in minimizers:
        for y in minimizers:
            if x | y not in family or x & y not in family:
                issues.append("Minimizers are not closed under union and intersection")
                return issues

    rng = SplitMix64(pair_seed)
    for _ in range(SUBMODULAR_PAIRS_PER_TRIAL):
        x = frozenset(d for d in doctors if rng.chance(0.5))
        y = frozenset(d for d in doctors if rng.chance(0.5))
        if rho(edges, x) + rho(edges, y) < rho(edges, x | y) + rho(edges, x & y):
            issues.append(f"Submodularity fails for X={sorted(x)}, Y={sorted(y)}")
            break
    return issues


SUITES: dict[VerifyMode, _Suite] = {
    VerifyMode.PREPROCESS: _Suite(_gen_preprocess, _check_preprocess),
    VerifyMode.SEPARATED: _Suite(_gen_separated, _check_separated),
    VerifyMode.DEGREE2: _Suite(_gen_degree2, _check_degree2),
    VerifyMode.ENVY: _Suite(_gen_envy, _check_envy),
    VerifyMode.SAT: _Suite(_gen_sat, _check_sat),
    VerifyMode.BIPARTITE: _Suite(_gen_bipartite, _check_bipartite),
}


def run_verify(
    mode: VerifyMode | str, trials: int, seed: int, budget: OracleBudget | None = None
) -> VerifySummary:
    """Run one property suite.

    Args:
        mode (VerifyMode | str): The suite.
        trials (int): Number of seeded trials.
        seed (int): Master seed; trial k uses ``derive_seed(seed, k)``.
        budget (OracleBudget | None): Oracle limits; the bundled defaults when omitted.

    Returns:
        VerifySummary: Pass/fail counts and the first counterexample.
    """
    mode = VerifyMode(mode)
    budget = budget or OracleBudget()
    suite = SUITES[mode]
    summary = VerifySummary(mode=mode.value, trials=trials, seed=seed)
    for index in range(trials):
        data, text = suite.generate(derive_seed(seed, index), budget)
        try:
            issues = suite.check(data, budget)
        except InvariantViolation as e:
            summary.internal_errors += 1
            issues = [f"internal: {e}"]
        except ClosureMatchError as e:
            issues = [str(e)]
        if issues:
            summary.failed += 1
            if summary.first_counterexample is None:
                summary.first_counterexample = text
                summary.first_messages = issues
                logger.warning(f"{mode.value} trial {index} failed: {issues[0]}")
        else:
            summary.passed += 1
    logger.info(f"verify {mode.value}: {summary.passed}/{trials} passed")
    return summary
