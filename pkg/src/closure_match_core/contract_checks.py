"""closure_match_core/contract_checks.py.

Run structural checks on solver outputs.

Each check returns a list of human-readable issues; an empty list means the
output satisfies the checked conditions. These checks are used by the verify
harness and by tests; the solvers themselves raise on hard failures.

"""

from closure_match_core import pref_calculus
from closure_match_core.instance_model import Instance, Matching, edges_at, supported_doctors
from closure_match_core.preprocess import PreprocessResult
from closure_match_core.stability_utils import is_matching

__all__ = [
    "check_doctor_optimal",
    "check_forbidden_unused",
    "check_doctor_coverage",
    "check_preprocess_contract",
]


def check_preprocess_contract(inst: Instance, res: PreprocessResult) -> list[str]:
    """Check the direct conditions on (R, μ).

    Covers μ ⊆ L, saturation of D[E∖R], R ∩ block(L) = ∅, the doctor-side
    ordering of R before E∖R, L = Ch(E∖R), and the follow-on properties
    checked by ``check_doctor_coverage``.

    Args:
        inst (Instance): The instance.
        res (PreprocessResult): Output of ``preprocess`` on ``inst``.

    Returns:
        list[str]: Issues found.
    """
    issues = []
    forbidden = res.forbidden
    mu = res.matching
    rest = inst.edge_set - forbidden

    if not is_matching(inst, mu.edges):
        issues.append("μ is not a matching of the instance")
    if pref_calculus.ch(inst, rest) != res.flat:
        issues.append("L differs from Ch(E∖R)")
    if not mu.edges <= res.flat:
        issues.append(f"μ ⊄ L: {sorted(mu.edges - res.flat)}")

    unsaturated = sorted(supported_doctors(rest) - mu.by_doctor.keys())
    if unsaturated:
        issues.append(f"Doctors in D[E∖R] left unmatched: {unsaturated}")

    blocked = forbidden & pref_calculus.block_set(inst, res.flat)
    if blocked:
        issues.append(f"R ∩ block(L) ≠ ∅: {sorted(blocked)}")

    for doctor in inst.doctors:
        local = inst.incident(doctor)
        worst_forbidden = max(
            (inst.doctor_rank[e] for e in local if e in forbidden), default=None
        )
        best_rest = min((inst.doctor_rank[e] for e in local if e not in forbidden), default=None)
        if worst_forbidden is not None and best_rest is not None and worst_forbidden > best_rest:
            issues.append(f"Doctor {doctor!r} prefers a remaining edge to a forbidden one")

    issues.extend(check_doctor_coverage(inst, res))
    return issues


def check_doctor_coverage(inst: Instance, res: PreprocessResult) -> list[str]:
    """Check the per-doctor consequences of the contract.

    (i) μ(d) = ∅ implies L(d) = ∅; (ii) L(d) = ∅ implies E(d) ⊆ R;
    (iii) an edge (d, h) outside R implies μ(d) ≠ ∅.

    Returns:
        list[str]: Issues found.
    """
    issues = []
    for doctor in inst.doctors:
        matched = doctor in res.matching.by_doctor
        in_flat = bool(edges_at(res.flat, doctor))
        local = inst.incident(doctor)
        if not matched and in_flat:
            issues.append(f"(i) {doctor!r} unmatched but L({doctor}) ≠ ∅")
        if not in_flat and any(e not in res.forbidden for e in local):
            issues.append(f"(ii) L({doctor}) = ∅ but E({doctor}) ⊄ R")
        if not matched and any(e not in res.forbidden for e in local):
            issues.append(f"(iii) {doctor!r} has an edge outside R but is unmatched")
    return issues


def check_forbidden_unused(res: PreprocessResult, stable: list[Matching]) -> list[str]:
    """Check that no stable matching uses a forbidden edge.

    Args:
        res (PreprocessResult): Pre-processing output.
        stable (list[Matching]): All stable matchings of the instance.

    Returns:
        list[str]: Issues found.
    """
    return [
        f"Stable matching {m.sorted_edges()} uses forbidden edges {sorted(m.edges & res.forbidden)}"
        for m in stable
        if m.edges & res.forbidden
    ]


def check_doctor_optimal(inst: Instance, mu: Matching, stable: list[Matching]) -> list[str]:
    """Check that every doctor weakly prefers μ to each stable matching.

    Returns:
        list[str]: Issues found.
    """
    issues = []
    for sigma in stable:
        for doctor in inst.doctors:
            mine = inst.rank(doctor, mu.by_doctor.get(doctor))
            theirs = inst.rank(doctor, sigma.by_doctor.get(doctor))
            if mine > theirs:
                issues.append(f"{doctor!r} prefers {sigma.sorted_edges()} to μ")
                break
    return issues
