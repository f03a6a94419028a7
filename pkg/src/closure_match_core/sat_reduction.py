"""closure_match_core/sat_reduction.py.

Reduction from (3,B2)-SAT to stable matching with closures.

A (3,B2) formula has clauses of exactly three distinct literals, and every
variable occurs exactly twice positively and exactly twice negatively.

Gadget names (1-based indices):

- variable i: doctors ``d_<i>.1``, ``d_<i>.2``; hospitals ``h_<i>.1``,
  ``t_<i>`` (closed, holds positive occurrences), ``f_<i>`` (closed, holds
  negative occurrences)
- clause t: doctors ``p_<t>.1`` .. ``p_<t>.5``; hospitals ``s_<t>.1`` ..
  ``s_<t>.3`` (closed) and ``q_<t>.1`` .. ``q_<t>.3``

An assignment maps to a stable matching and any stable matching decodes
back to a satisfying assignment.

"""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
import itertools
from typing import Any

from closure_match_core import log_utils
from closure_match_core.errors import InputError, InvariantViolation
from closure_match_core.instance_model import Edge, Instance, Matching, PrefOrder
from closure_match_core.stability_utils import is_stable

__all__ = [
    "B2Formula",
    "SatMapping",
    "assignment_to_matching",
    "candidate_matching",
    "canonical_candidates",
    "clause_gadget_instance",
    "format_b2sat",
    "is_satisfied",
    "matching_to_assignment",
    "max_degree",
    "parse_b2sat",
    "prefers_closed",
    "reduce_sat",
]

logger = log_utils.logger

Assignment = tuple[int, ...]


@dataclass(frozen=True)
class B2Formula:
    """A validated (3,B2)-SAT formula.

    Attributes:
        n (int): Number of variables.
        clauses (tuple[tuple[int, int, int], ...]): Literals as signed 1-based variable indices.

    Raises:
        InputError: ``E_SYNTAX``, ``E_CLAUSE_SIZE`` or ``E_OCCURRENCE``.
    """

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.n < 1:
            raise InputError("E_SYNTAX", f"Variable count must be positive, got {self.n}")
        for clause in clauses:
            if len(clause) != 3:
                raise InputError("E_CLAUSE_SIZE", f"Clause {list(clause)} does not have 3 literals")
            if len(set(clause)) != 3:
                raise InputError("E_CLAUSE_SIZE", f"Clause {list(clause)} repeats a literal")
            for literal in clause:
                if literal == 0 or abs(literal) > self.n:
                    raise InputError("E_SYNTAX", f"Literal {literal} out of range 1..{self.n}")
        for variable in range(1, self.n + 1):
            positive = sum(c.count(variable) for c in clauses)
            negative = sum(c.count(-variable) for c in clauses)
            if positive != 2 or negative != 2:
                raise InputError(
                    "E_OCCURRENCE",
                    f"Variable {variable} occurs {positive}x positively and {negative}x negatively",
                )

    @property
    def m(self) -> int:
        """Return the number of clauses."""
        return len(self.clauses)

    def literal(self, t: int, j: int) -> int:
        """Return the j-th literal of clause t (both 1-based)."""
        return self.clauses[t - 1][j - 1]

    def occurrences(self, literal: int) -> list[tuple[int, int]]:
        """Return the (t, j) positions of ``literal`` in canonical order."""
        return [
            (t, j)
            for t, clause in enumerate(self.clauses, start=1)
            for j, lit in enumerate(clause, start=1)
            if lit == literal
        ]

    def complementary_clauses(self) -> list[int]:
        """Return the indices of clauses containing a literal and its negation."""
        return [
            t
            for t, clause in enumerate(self.clauses, start=1)
            if any(-lit in clause for lit in clause)
        ]


@dataclass(frozen=True)
class SatMapping:
    """Names of the gadget vertices for a formula with n variables and m clauses."""

    n: int
    m: int

    @staticmethod
    def variable_doctor(i: int, k: int) -> str:
        """Return ``d_<i>.<k>`` (k = 1 or 2)."""
        return f"d_{i}.{k}"

    @staticmethod
    def variable_hospital(i: int) -> str:
        """Return ``h_<i>.1``."""
        return f"h_{i}.1"

    @staticmethod
    def true_hospital(i: int) -> str:
        """Return ``t_<i>``."""
        return f"t_{i}"

    @staticmethod
    def false_hospital(i: int) -> str:
        """Return ``f_<i>``."""
        return f"f_{i}"

    @staticmethod
    def clause_doctor(t: int, j: int) -> str:
        """Return ``p_<t>.<j>`` (j = 1..5)."""
        return f"p_{t}.{j}"

    @staticmethod
    def slack_hospital(t: int, j: int) -> str:
        """Return ``s_<t>.<j>`` (j = 1..3)."""
        return f"s_{t}.{j}"

    @staticmethod
    def clause_hospital(t: int, j: int) -> str:
        """Return ``q_<t>.<j>`` (j = 1..3)."""
        return f"q_{t}.{j}"

    def q_star(self, t: int, j: int) -> str:
        """Return q*_{t,j}: ``q_<t>.1`` for j = 1, else ``q_<t>.2``."""
        return self.clause_hospital(t, 1 if j == 1 else 2)

    def literal_hospital(self, literal: int) -> str:
        """Return ``t_<i>`` for the literal +i and ``f_<i>`` for -i."""
        if literal > 0:
            return self.true_hospital(literal)
        return self.false_hospital(-literal)

    def closed_hospitals(self) -> frozenset[str]:
        """Return S: every t_i, f_i and s_{t,j}."""
        names = {self.true_hospital(i) for i in range(1, self.n + 1)}
        names |= {self.false_hospital(i) for i in range(1, self.n + 1)}
        names |= {self.slack_hospital(t, j) for t in range(1, self.m + 1) for j in (1, 2, 3)}
        return frozenset(names)

    def to_dict(self) -> dict[str, Any]:
        """Return the sidecar map written next to a reduced instance."""
        return {
            "n": self.n,
            "m": self.m,
            "variables": {
                i: {
                    "doctors": [self.variable_doctor(i, 1), self.variable_doctor(i, 2)],
                    "hospital": self.variable_hospital(i),
                    "true": self.true_hospital(i),
                    "false": self.false_hospital(i),
                }
                for i in range(1, self.n + 1)
            },
            "clauses": {
                t: {
                    "doctors": [self.clause_doctor(t, j) for j in range(1, 6)],
                    "slack": [self.slack_hospital(t, j) for j in (1, 2, 3)],
                    "q": [self.clause_hospital(t, j) for j in (1, 2, 3)],
                }
                for t in range(1, self.m + 1)
            },
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SatMapping":
        """Rebuild a mapping from its sidecar form."""
        return cls(n=int(data["n"]), m=int(data["m"]))


def parse_b2sat(text: str) -> B2Formula:
    """Parse a formula in ``p b2sat <n> <m>`` format.

    Lines starting with ``c`` are comments. Each clause line holds three
    nonzero literals followed by ``0``. Complementary literals in one clause
    are accepted with a warning.

    Args:
        text (str): File contents.

    Returns:
        B2Formula: The validated formula.

    Raises:
        InputError: ``E_SYNTAX``, ``E_CLAUSE_SIZE`` or ``E_OCCURRENCE``.
    """
    header: tuple[int, int] | None = None
    clauses: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None or len(parts) != 4 or parts[1] != "b2sat":
                raise InputError("E_SYNTAX", f"Line {lineno}: invalid problem line {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise InputError("E_SYNTAX", f"Line {lineno}: invalid problem line {line!r}") from None
            continue
        if header is None:
            raise InputError("E_SYNTAX", f"Line {lineno}: clause before problem line")
        try:
            literals = [int(x) for x in parts]
        except ValueError:
            raise InputError("E_SYNTAX", f"Line {lineno}: non-integer literal") from None
        if literals[-1] != 0 or 0 in literals[:-1]:
            raise InputError("E_SYNTAX", f"Line {lineno}: clause must end with a single 0")
        if len(literals) != 4:
            raise InputError("E_CLAUSE_SIZE", f"Line {lineno}: clause does not have 3 literals")
        clauses.append(tuple(literals[:-1]))

    if header is None:
        raise InputError("E_SYNTAX", "Missing problem line 'p b2sat <n> <m>'")
    n, m = header
    if m != len(clauses):
        raise InputError("E_SYNTAX", f"Header announces {m} clauses, found {len(clauses)}")
    if 3 * m != 4 * n:
        raise InputError("E_OCCURRENCE", f"m = {m} is not 4n/3 for n = {n}")
    formula = B2Formula(n, tuple(clauses))
    for t in formula.complementary_clauses():
        logger.warning(f"Clause {t} contains a literal and its negation")
    return formula


def format_b2sat(formula: B2Formula) -> str:
    """Return the ``p b2sat`` text of a formula."""
    lines = [f"p b2sat {formula.n} {formula.m}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in formula.clauses)
    return "\n".join(lines) + "\n"


def _literal_true(literal: int, phi: Sequence[int]) -> bool:
    value = phi[abs(literal) - 1]
    return value == 1 if literal > 0 else value == 0


def is_satisfied(formula: B2Formula, phi: Sequence[int]) -> bool:
    """Return True iff every clause has a literal made true by φ."""
    if len(phi) != formula.n:
        return False
    return all(any(_literal_true(lit, phi) for lit in clause) for clause in formula.clauses)


def max_degree(inst: Instance) -> int:
    """Return max |E(v)| over all vertices."""
    return max((inst.degree(v) for v in inst.doctors + inst.hospitals), default=0)


def prefers_closed(inst: Instance) -> bool:
    """Return True iff every doctor strictly prefers each closed hospital to each open one."""
    for doctor in inst.doctors:
        local = inst.incident(doctor)
        closed = [inst.doctor_rank[e] for e in local if e.hospital in inst.closed]
        opened = [inst.doctor_rank[e] for e in local if e.hospital not in inst.closed]
        if closed and opened and max(closed) >= min(opened):
            return False
    return True


def reduce_sat(formula: B2Formula) -> tuple[Instance, SatMapping]:
    """Build the gadget instance of a (3,B2) formula.

    Returns:
        tuple[Instance, SatMapping]: The instance (max degree 3, closed hospitals
        strictly preferred by every doctor) and its name map.

    Raises:
        InvariantViolation: If the output breaks a degree or preference side condition.
    """
    mp = SatMapping(formula.n, formula.m)
    groups: dict[str, list[list[str]]] = {}

    for i in range(1, formula.n + 1):
        d1, d2 = mp.variable_doctor(i, 1), mp.variable_doctor(i, 2)
        h1 = mp.variable_hospital(i)
        groups[d1] = [[h1]]
        groups[d2] = [[mp.true_hospital(i), mp.false_hospital(i)], [h1]]
        groups[h1] = [[d1, d2]]
        for literal, hospital in ((i, mp.true_hospital(i)), (-i, mp.false_hospital(i))):
            holders = [mp.clause_doctor(t, j) for t, j in formula.occurrences(literal)]
            groups[hospital] = [holders, [d2]]

    for t in range(1, formula.m + 1):
        p = [mp.clause_doctor(t, j) for j in range(1, 6)]
        q = [mp.clause_hospital(t, j) for j in (1, 2, 3)]
        for j in (1, 2, 3):
            slack = mp.slack_hospital(t, j)
            groups[p[j - 1]] = [
                [slack],
                [mp.literal_hospital(formula.literal(t, j))],
                [mp.q_star(t, j)],
            ]
            groups[slack] = [[p[j - 1]]]
        groups[p[3]] = [[q[0], q[1]]]
        groups[p[4]] = [[q[0], q[2]]]
        groups[q[0]] = [[p[0], p[3], p[4]]]
        groups[q[1]] = [[p[1], p[2], p[3]]]
        groups[q[2]] = [[p[4]]]

    doctors = [mp.variable_doctor(i, k) for i in range(1, formula.n + 1) for k in (1, 2)]
    doctors += [mp.clause_doctor(t, j) for t in range(1, formula.m + 1) for j in range(1, 6)]
    hospitals = [
        name
        for i in range(1, formula.n + 1)
        for name in (mp.variable_hospital(i), mp.true_hospital(i), mp.false_hospital(i))
    ]
    hospitals += [
        name
        for t in range(1, formula.m + 1)
        for j in (1, 2, 3)
        for name in (mp.slack_hospital(t, j), mp.clause_hospital(t, j))
    ]
    inst = Instance(
        doctors=tuple(doctors),
        hospitals=tuple(hospitals),
        closed=mp.closed_hospitals(),
        prefs={v: PrefOrder.from_lists(g) for v, g in groups.items()},
    )
    if max_degree(inst) > 3:
        raise InvariantViolation("E_GADGET", "Reduced instance has a vertex of degree above 3")
    if not prefers_closed(inst):
        raise InvariantViolation("E_GADGET", "Some doctor does not prefer closed hospitals")
    logger.debug(
        f"Reduced formula n={formula.n}, m={formula.m}: "
        f"{len(inst.doctors)} doctors, {len(inst.hospitals)} hospitals, {len(inst.edges)} edges"
    )
    return inst, mp


def candidate_matching(
    formula: B2Formula, mapping: SatMapping, phi: Sequence[int], choices: Sequence[int]
) -> Matching:
    """Build the canonical matching for an assignment and a clause pattern.

    Args:
        formula (B2Formula): The formula.
        mapping (SatMapping): Its name map.
        phi (Sequence[int]): 0/1 value per variable.
        choices (Sequence[int]): Per clause, the position j_t in 1..3 sent to q*.

    Returns:
        Matching: The candidate matching.
    """
    mp = mapping
    edges = []
    for i in range(1, formula.n + 1):
        edges.append(Edge(mp.variable_doctor(i, 1), mp.variable_hospital(i)))
        chosen = mp.true_hospital(i) if phi[i - 1] == 0 else mp.false_hospital(i)
        edges.append(Edge(mp.variable_doctor(i, 2), chosen))
    for t, j_t in enumerate(choices, start=1):
        taken = mp.q_star(t, j_t)
        edges.append(Edge(mp.clause_doctor(t, j_t), taken))
        edges.extend(
            Edge(mp.clause_doctor(t, j), mp.slack_hospital(t, j)) for j in (1, 2, 3) if j != j_t
        )
        spare = mp.clause_hospital(t, 2) if taken == mp.clause_hospital(t, 1) else mp.clause_hospital(t, 1)
        edges.append(Edge(mp.clause_doctor(t, 4), spare))
        edges.append(Edge(mp.clause_doctor(t, 5), mp.clause_hospital(t, 3)))
    return Matching(frozenset(edges))


def assignment_to_matching(
    formula: B2Formula,
    phi: Sequence[int],
    mapping: SatMapping,
    instance: Instance | None = None,
) -> Matching:
    """Turn a satisfying assignment into a stable matching of the gadget instance.

    Each clause sends its smallest true position j_t to q*_{t,j_t}.

    Args:
        formula (B2Formula): The formula.
        phi (Sequence[int]): A satisfying 0/1 assignment.
        mapping (SatMapping): The name map.
        instance (Instance | None): The reduced instance; rebuilt when omitted.

    Returns:
        Matching: A stable matching.

    Raises:
        InputError: ``E_UNSAT_ASSIGNMENT`` if φ does not satisfy the formula.
        InvariantViolation: If the matching is not stable.
    """
    if not is_satisfied(formula, phi):
        raise InputError("E_UNSAT_ASSIGNMENT", f"Assignment {list(phi)} does not satisfy the formula")
    choices = [
        next(j for j, lit in enumerate(clause, start=1) if _literal_true(lit, phi))
        for clause in formula.clauses
    ]
    matching = candidate_matching(formula, mapping, phi, choices)
    inst = instance if instance is not None else reduce_sat(formula)[0]
    if not is_stable(inst, matching):
        raise InvariantViolation("E_NOT_STABLE", "Assignment matching is not stable")
    return matching


def matching_to_assignment(mapping: SatMapping, matching: Matching) -> Assignment:
    """Decode φ from a matching: φ(α_i) = 0 iff (d_{i,2}, t_i) ∈ μ.

    Raises:
        InputError: ``E_NOT_CANONICAL`` unless exactly one of (d_{i,2}, t_i)
            and (d_{i,2}, f_i) is in μ for every i.
    """
    phi = []
    for i in range(1, mapping.n + 1):
        d2 = mapping.variable_doctor(i, 2)
        on_true = Edge(d2, mapping.true_hospital(i)) in matching
        on_false = Edge(d2, mapping.false_hospital(i)) in matching
        if on_true == on_false:
            raise InputError("E_NOT_CANONICAL", f"Variable {i} has no unique t/f edge")
        phi.append(0 if on_true else 1)
    return tuple(phi)


def canonical_candidates(formula: B2Formula, mapping: SatMapping) -> Iterator[Matching]:
    """Yield the 2ⁿ·3ᵐ candidate matchings (assignment × clause pattern)."""
    for phi in itertools.product((0, 1), repeat=formula.n):
        for choices in itertools.product((1, 2, 3), repeat=formula.m):
            yield candidate_matching(formula, mapping, phi, choices)


def clause_gadget_instance() -> Instance:
    """Return the clause gadget of clause 1 on its own (10 edges, literal edges omitted)."""
    mp = SatMapping(n=0, m=1)
    p = [mp.clause_doctor(1, j) for j in range(1, 6)]
    q = [mp.clause_hospital(1, j) for j in (1, 2, 3)]
    s = [mp.slack_hospital(1, j) for j in (1, 2, 3)]
    groups = {
        p[0]: [[s[0]], [q[0]]],
        p[1]: [[s[1]], [q[1]]],
        p[2]: [[s[2]], [q[1]]],
        p[3]: [[q[0], q[1]]],
        p[4]: [[q[0], q[2]]],
        q[0]: [[p[0], p[3], p[4]]],
        q[1]: [[p[1], p[2], p[3]]],
        q[2]: [[p[4]]],
        s[0]: [[p[0]]],
        s[1]: [[p[1]]],
        s[2]: [[p[2]]],
    }
    return Instance(
        doctors=tuple(p),
        hospitals=tuple(q + s),
        closed=frozenset(s),
        prefs={v: PrefOrder.from_lists(g) for v, g in groups.items()},
    )
