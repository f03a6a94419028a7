"""closure_match_core/instance_generator.py.

Seeded random instances, envy instances and (3,B2) formulas.

All randomness comes from ``SplitMix64``: identical parameters always give
identical output. Doctors are named ``d0, d1, ...`` and hospitals ``h0, h1, ...``.

"""

from dataclasses import dataclass

from closure_match_core import log_utils
from closure_match_core.envy_reduction import EnvyInstance
from closure_match_core.errors import InputError, InvariantViolation
from closure_match_core.instance_model import Instance, PrefOrder
from closure_match_core.rng_utils import SplitMix64
from closure_match_core.sat_reduction import B2Formula

__all__ = [
    "GenParams",
    "gen_b2sat",
    "gen_envy_instance",
    "gen_instance",
]

logger = log_utils.logger

MAX_B2SAT_ATTEMPTS = 10_000


@dataclass(frozen=True)
class GenParams:
    """Parameters of the random instance generator.

    Attributes:
        seed (int): PRNG seed.
        n_doctors (int): Number of doctors.
        n_hospitals (int): Number of hospitals.
        max_degree (int | None): Cap on each doctor's degree; None for no cap.
        edge_prob (float): Probability that a (doctor, hospital) pair is an edge.
        tie_prob (float): Probability that a list entry joins the previous tie group.
        closure_prob (float): Probability that a hospital is closed.
        enforce_star (bool): Put every closed hospital strictly after every open one.
        enforce_degree2 (bool): Require doctor degrees of at most 2.
        max_edges (int | None): Cap on |E|, filled doctor by doctor.

    Raises:
        InputError: ``E_BAD_PARAMS`` on out-of-range values.
    """

    seed: int = 0
    n_doctors: int = 4
    n_hospitals: int = 4
    max_degree: int | None = None
    edge_prob: float = 0.5
    tie_prob: float = 0.3
    closure_prob: float = 0.3
    enforce_star: bool = False
    enforce_degree2: bool = False
    max_edges: int | None = None

    def __post_init__(self) -> None:
        if self.n_doctors < 0 or self.n_hospitals < 0:
            raise InputError("E_BAD_PARAMS", "Vertex counts must be non-negative")
        for name in ("edge_prob", "tie_prob", "closure_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InputError("E_BAD_PARAMS", f"{name} must lie in [0, 1], got {value}")
        if self.max_degree is not None and self.max_degree < 0:
            raise InputError("E_BAD_PARAMS", "max_degree must be non-negative")
        if self.max_edges is not None and self.max_edges < 0:
            raise InputError("E_BAD_PARAMS", "max_edges must be non-negative")
        if self.enforce_degree2 and (self.max_degree is None or self.max_degree > 2):
            raise InputError("E_BAD_PARAMS", "enforce_degree2 requires max_degree <= 2")


def _names(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{k}" for k in range(count)]


def _merge_ties(
    rng: SplitMix64, order: list[str], tie_prob: float, barrier: frozenset[str] | None = None
) -> list[list[str]]:
    """Group a strict order into ties; never merge across the ``barrier`` set boundary."""
    groups: list[list[str]] = []
    for item in order:
        merge = rng.chance(tie_prob)
        if groups and merge:
            crosses = barrier is not None and ((groups[-1][-1] in barrier) != (item in barrier))
            if not crosses:
                groups[-1].append(item)
                continue
        groups.append([item])
    return groups


def _sample_neighbours(rng: SplitMix64, p: GenParams, hospitals: list[str]) -> dict[str, list[str]]:
    """Draw each doctor's acceptable hospitals, honouring max_degree and max_edges."""
    doctors = _names("d", p.n_doctors)
    remaining = p.max_edges
    neighbours: dict[str, list[str]] = {}
    for doctor in doctors:
        chosen = [h for h in hospitals if rng.chance(p.edge_prob)]
        if p.max_degree is not None and len(chosen) > p.max_degree:
            pool = list(chosen)
            rng.shuffle(pool)
            keep = set(pool[: p.max_degree])
            chosen = [h for h in hospitals if h in keep]
        if remaining is not None:
            chosen = chosen[:remaining]
            remaining -= len(chosen)
        neighbours[doctor] = chosen
    return neighbours


def gen_instance(p: GenParams) -> Instance:
    """Generate a random instance.

    Args:
        p (GenParams): Generator parameters.

    Returns:
        Instance: A valid instance; ``enforce_star`` output satisfies the
        separated precondition and ``enforce_degree2`` output has doctor degree ≤ 2.
    """
    rng = SplitMix64(p.seed)
    hospitals = _names("h", p.n_hospitals)
    closed = frozenset(h for h in hospitals if rng.chance(p.closure_prob))
    neighbours = _sample_neighbours(rng, p, hospitals)

    groups: dict[str, list[list[str]]] = {}
    applicants: dict[str, list[str]] = {h: [] for h in hospitals}
    for doctor, chosen in neighbours.items():
        order = list(chosen)
        rng.shuffle(order)
        barrier = None
        if p.enforce_star:
            order = [h for h in order if h not in closed] + [h for h in order if h in closed]
            barrier = closed
        groups[doctor] = _merge_ties(rng, order, p.tie_prob, barrier)
        for hospital in chosen:
            applicants[hospital].append(doctor)

    for hospital, doctors in applicants.items():
        order = list(doctors)
        rng.shuffle(order)
        groups[hospital] = _merge_ties(rng, order, p.tie_prob)

    inst = Instance(
        doctors=tuple(neighbours),
        hospitals=tuple(hospitals),
        closed=closed,
        prefs={v: PrefOrder.from_lists(g) for v, g in groups.items()},
    )
    logger.debug(f"Generated instance seed={p.seed}: {len(inst.edges)} edges, {len(closed)} closed")
    return inst


def gen_envy_instance(p: GenParams) -> EnvyInstance:
    """Generate a random envy-free assignment instance (doctor preferences only)."""
    rng = SplitMix64(p.seed)
    hospitals = _names("h", p.n_hospitals)
    neighbours = _sample_neighbours(rng, p, hospitals)
    prefs = {}
    for doctor, chosen in neighbours.items():
        order = list(chosen)
        rng.shuffle(order)
        prefs[doctor] = PrefOrder.from_lists(_merge_ties(rng, order, p.tie_prob))
    return EnvyInstance(doctors=tuple(neighbours), hospitals=tuple(hospitals), prefs=prefs)


def gen_b2sat(n: int, seed: int) -> B2Formula:
    """Generate a random (3,B2) formula with n variables and 4n/3 clauses.

    Each variable contributes two positive and two negative tokens; the tokens
    are shuffled and cut into clauses of three, resampling while some clause
    repeats a literal.

    Args:
        n (int): Number of variables, a positive multiple of 3.
        seed (int): PRNG seed.

    Returns:
        B2Formula: A valid formula.

    Raises:
        InputError: ``E_BAD_N`` if n is not a positive multiple of 3.
    """
    if n <= 0 or n % 3 != 0:
        raise InputError("E_BAD_N", f"n must be a positive multiple of 3, got {n}")
    rng = SplitMix64(seed)
    tokens = [lit for i in range(1, n + 1) for lit in (i, i, -i, -i)]
    for _attempt in range(MAX_B2SAT_ATTEMPTS):
        rng.shuffle(tokens)
        clauses = [tuple(tokens[k : k + 3]) for k in range(0, len(tokens), 3)]
        if all(len(set(clause)) == 3 for clause in clauses):
            return B2Formula(n, tuple(clauses))
    raise InvariantViolation("E_RESAMPLE", f"No valid formula after {MAX_B2SAT_ATTEMPTS} shuffles")
