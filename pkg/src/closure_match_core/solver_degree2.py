"""closure_match_core/solver_degree2.py.

Solver for instances in which every doctor has at most two incident edges.

After pre-processing, the graph G* = (D, H; L) splits into connected
components. Components with at least two vertices are balanced (P, with at
most one doctor of L-degree one) or have exactly one spare hospital (Q, a
tree). P components with exactly one such leaf doctor form P*. Open
hospitals with no L-edge but some forbidden edge form R-singletons.

A closure digraph on P* ∪ Q ∪ R-singletons encodes displacement chains. A
stable matching exists iff every source (an all-open Q component or an
R-singleton) reaches a P* component anchored at a closed hospital; the
chains then yield a stable matching σ.

"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from closure_match_core import log_utils
from closure_match_core.errors import InputError, InvariantViolation, PreconditionError
from closure_match_core.instance_model import Edge, Instance, Matching, edges_at, group_by_doctor
from closure_match_core.preprocess import PreprocessResult, critical_hospitals, preprocess
from closure_match_core.stability_utils import is_stable

__all__ = [
    "ClosureDigraph",
    "Component",
    "ComponentKind",
    "analyze_components",
    "build_digraph",
    "find_paths",
    "max_doctor_degree",
    "solve_degree2",
    "tree_matching_xi",
]

logger = log_utils.logger


class ComponentKind(Enum):
    """Classification of a connected component of G*."""

    P = "P"
    PSTAR = "P*"
    Q = "Q"
    R_SINGLETON = "R"


@dataclass(frozen=True)
class Component:
    """A classified connected component X of G*.

    Attributes:
        id (int): Index in canonical order (by smallest hospital id).
        kind (ComponentKind): P, P*, Q or R-singleton.
        doctors (frozenset[str]): D_X.
        hospitals (frozenset[str]): H_X.
        edges (frozenset[Edge]): The L-edges inside X.
        d_x (str | None): P* only: the unique doctor with one L-edge.
        h_x (str | None): P* only: the L-partner of ``d_x``.
        hbar_x (str | None): P* only: the other E-neighbour of ``d_x``, if any.
    """

    id: int
    kind: ComponentKind
    doctors: frozenset[str]
    hospitals: frozenset[str]
    edges: frozenset[Edge] = frozenset()
    d_x: str | None = None
    h_x: str | None = None
    hbar_x: str | None = None

    def label(self) -> str:
        """Return a short label such as ``P*{a,s1}``."""
        return f"{self.kind.value}{{{','.join(sorted(self.doctors | self.hospitals))}}}"


@dataclass(frozen=True)
class ClosureDigraph:
    """The digraph D = (V, A) with its source set V+ and target set V−."""

    nodes: tuple[Component, ...]
    arcs: tuple[tuple[int, int], ...]
    v_plus: frozenset[int]
    v_minus: frozenset[int]

    def to_networkx(self) -> nx.DiGraph:
        """Return the digraph as a networkx DiGraph on component ids."""
        graph = nx.DiGraph()
        graph.add_nodes_from(c.id for c in self.nodes)
        graph.add_edges_from(self.arcs)
        return graph

    def node(self, component_id: int) -> Component:
        """Return the component with the given id."""
        for component in self.nodes:
            if component.id == component_id:
                return component
        raise KeyError(component_id)


def max_doctor_degree(inst: Instance) -> int:
    """Return max |E(d)| over doctors (0 for an instance without doctors)."""
    return max((inst.degree(d) for d in inst.doctors), default=0)


def _require_degree2(inst: Instance) -> None:
    over = [d for d in inst.doctors if inst.degree(d) > 2]
    if over:
        raise PreconditionError("E_DEGREE", f"Doctors with more than two edges: {over}")


def _classify(
    inst: Instance,
    res: PreprocessResult,
    doctors: frozenset[str],
    hospitals: frozenset[str],
    flat_at_doctor: dict[str, list[Edge]],
) -> dict | None:
    if not doctors:
        (hospital,) = hospitals
        touched = any(e.hospital == hospital for e in res.forbidden)
        if hospital not in inst.closed and touched:
            return {"kind": ComponentKind.R_SINGLETON}
        return None
    if len(doctors) > len(hospitals):
        raise InvariantViolation("E_COMPONENT_SIZE", f"|D_X| > |H_X| in {sorted(doctors)}")
    leaves = sorted(d for d in doctors if len(flat_at_doctor[d]) == 1)
    if len(doctors) < len(hospitals):
        if leaves or len(hospitals) != len(doctors) + 1:
            raise InvariantViolation("E_FAMILY_Q", f"Malformed Q component {sorted(doctors)}")
        return {"kind": ComponentKind.Q}
    if len(leaves) > 1:
        raise InvariantViolation("E_FAMILY_P", f"P component with leaves {leaves}")
    if not leaves:
        return {"kind": ComponentKind.P}
    d_x = leaves[0]
    h_x = flat_at_doctor[d_x][0].hospital
    others = [e.hospital for e in inst.incident(d_x) if e.hospital != h_x]
    return {
        "kind": ComponentKind.PSTAR,
        "d_x": d_x,
        "h_x": h_x,
        "hbar_x": others[0] if others else None,
    }


def analyze_components(inst: Instance, res: PreprocessResult) -> list[Component]:
    """Compute and classify the connected components of G* = (D, H; L).

    Single doctors and singleton hospitals that are not R-singletons are omitted.

    Args:
        inst (Instance): The instance.
        res (PreprocessResult): Output of ``preprocess`` on ``inst``.

    Returns:
        list[Component]: Classified components ordered by smallest hospital id.

    Raises:
        PreconditionError: ``E_DEGREE`` if a doctor has more than two edges.
        InvariantViolation: If a component breaks the size or leaf rules.
    """
    _require_degree2(inst)
    graph = nx.Graph()
    graph.add_nodes_from(inst.doctors)
    graph.add_nodes_from(inst.hospitals)
    graph.add_edges_from(sorted(res.flat))
    flat_at_doctor = group_by_doctor(res.flat)

    groups = []
    for members in nx.connected_components(graph):
        hospitals = frozenset(v for v in members if inst.is_hospital(v))
        if hospitals:
            groups.append((frozenset(members) - hospitals, hospitals))
    groups.sort(key=lambda group: min(group[1]))

    components = []
    for doctors, hospitals in groups:
        fields = _classify(inst, res, doctors, hospitals, flat_at_doctor)
        if fields is None:
            continue
        components.append(
            Component(
                id=len(components),
                doctors=doctors,
                hospitals=hospitals,
                edges=frozenset(e for e in res.flat if e.doctor in doctors),
                **fields,
            )
        )
    return components


def tree_matching_xi(component: Component, root: str) -> Matching:
    """Match every doctor of a Q component inside L while leaving ``root`` free.

    The component is a tree; rooting it at ``root`` and matching each doctor
    to its child hospital gives the matching.

    Args:
        component (Component): A Q component.
        root (str): A hospital of the component.

    Returns:
        Matching: ξ ⊆ L(D_X) with ξ(root) = ∅ and every doctor of X matched.

    Raises:
        PreconditionError: ``E_BAD_ROOT`` if the component is not Q or ``root`` is outside it.
    """
    if component.kind is not ComponentKind.Q or root not in component.hospitals:
        raise PreconditionError("E_BAD_ROOT", f"{root!r} is not a hospital of a Q component")
    tree = nx.Graph()
    tree.add_edges_from(sorted(component.edges))
    xi = Matching(
        frozenset(
            Edge(parent, child)
            for child, parent in nx.bfs_predecessors(tree, root)
            if child in component.hospitals
        )
    )
    if xi.by_doctor.keys() != component.doctors or root in xi.by_hospital:
        raise InvariantViolation("E_TREE", f"Tree matching failed for {component.label()}")
    return xi


def _arc_allowed(inst: Instance, res: PreprocessResult, x: Component, y: Component) -> bool:
    hbar = y.hbar_x
    assert y.d_x is not None and hbar is not None
    incoming = inst.hospital_rank[Edge(y.d_x, hbar)]
    if x.kind is ComponentKind.PSTAR:
        assert x.d_x is not None
        return x.h_x == hbar and incoming < inst.hospital_rank[Edge(x.d_x, hbar)]
    if x.kind is ComponentKind.Q:
        representative = edges_at(x.edges, hbar)[0]
        return incoming <= inst.hospital_rank[representative]
    for e in edges_at(res.forbidden, hbar):
        own = inst.doctor_rank[e]
        current = inst.rank(e.doctor, res.matching.by_doctor.get(e.doctor))
        if own == current and incoming > inst.hospital_rank[e]:
            return False
        if own < current and incoming >= inst.hospital_rank[e]:
            return False
    return True


def build_digraph(
    inst: Instance, res: PreprocessResult, components: list[Component]
) -> ClosureDigraph:
    """Build the closure digraph on P* ∪ Q ∪ R-singleton components.

    An arc X → Y requires Y ∈ P* with |E(d_Y)| = 2, h̄_Y ∈ H_X and
    (d_Y, h_Y) ≻ (d_Y, h̄_Y) at d_Y, plus a condition depending on the kind of X.
    For X ∈ P*: h_X = h̄_Y and h_X strictly prefers d_Y to d_X. For X ∈ Q:
    h̄_Y weakly prefers d_Y to its L-partners. For an R-singleton: d_Y beats
    every forbidden edge at h̄_Y that its doctor strictly prefers to μ, and
    ties-or-beats those it is indifferent about.

    Raises:
        InvariantViolation: ``E_INDEGREE`` if some node has two incoming arcs.
    """
    nodes = tuple(c for c in components if c.kind is not ComponentKind.P)
    home = {h: c for c in nodes for h in c.hospitals}

    arcs = []
    for y in nodes:
        if y.kind is not ComponentKind.PSTAR or y.hbar_x is None:
            continue
        assert y.d_x is not None and y.h_x is not None
        if inst.doctor_rank[Edge(y.d_x, y.h_x)] >= inst.doctor_rank[Edge(y.d_x, y.hbar_x)]:
            continue
        x = home.get(y.hbar_x)
        if x is None or x.id == y.id:
            continue
        if _arc_allowed(inst, res, x, y):
            arcs.append((x.id, y.id))

    heads = Counter(head for _, head in arcs)
    crowded = [head for head, count in heads.items() if count > 1]
    if crowded:
        raise InvariantViolation("E_INDEGREE", f"Nodes with in-degree above one: {crowded}")

    v_plus = frozenset(
        c.id
        for c in nodes
        if c.kind is ComponentKind.R_SINGLETON
        or (c.kind is ComponentKind.Q and not c.hospitals & inst.closed)
    )
    v_minus = frozenset(
        c.id for c in nodes if c.kind is ComponentKind.PSTAR and c.h_x in inst.closed
    )
    if any(heads[source] for source in v_plus):
        raise InvariantViolation("E_INDEGREE", "A source component has an incoming arc")
    return ClosureDigraph(nodes=nodes, arcs=tuple(sorted(arcs)), v_plus=v_plus, v_minus=v_minus)


def find_paths(digraph: ClosureDigraph) -> dict[int, list[int]] | None:
    """Pick, for every source in V+, a shortest path to some node of V−.

    Returns:
        dict[int, list[int]] | None: Paths keyed by source id, or None when
        some source reaches no node of V−.

    Raises:
        InvariantViolation: If two chosen paths share a node.
    """
    graph = digraph.to_networkx()
    paths: dict[int, list[int]] = {}
    used: set[int] = set()
    for source in sorted(digraph.v_plus):
        reach = nx.single_source_shortest_path(graph, source)
        targets = sorted((len(path), node) for node, path in reach.items() if node in digraph.v_minus)
        if not targets:
            logger.debug(f"Source {digraph.node(source).label()} reaches no closed anchor")
            return None
        path = reach[targets[0][1]]
        if used & set(path):
            raise InvariantViolation("E_PATHS_OVERLAP", f"Path from {source} is not disjoint")
        used |= set(path)
        paths[source] = path
    return paths


def _construct_sigma(
    inst: Instance,
    res: PreprocessResult,
    digraph: ClosureDigraph,
    paths: dict[int, list[int]],
) -> Matching:
    edges = set(res.matching.edges)

    def _reroot(component: Component, root: str) -> None:
        edges.difference_update({e for e in edges if e.doctor in component.doctors})
        edges.update(tree_matching_xi(component, root).edges)

    for source, path in paths.items():
        first = digraph.node(source)
        if first.kind is ComponentKind.Q:
            second = digraph.node(path[1])
            assert second.hbar_x is not None
            _reroot(first, second.hbar_x)

    for component in digraph.nodes:
        if component.kind is ComponentKind.Q and component.id not in digraph.v_plus:
            closed = sorted(component.hospitals & inst.closed)
            if not closed:
                raise InvariantViolation("E_NO_FREE_HOSPITAL", f"{component.label()} has no closed hospital")
            _reroot(component, closed[0])

    chained = [digraph.node(n) for path in paths.values() for n in path[1:]]
    plus = {Edge(c.d_x, c.hbar_x) for c in chained if c.d_x and c.hbar_x}
    minus = {Edge(c.d_x, c.h_x) for c in chained if c.d_x and c.h_x}
    try:
        return Matching(frozenset((edges - minus) | plus))
    except InputError as exc:
        raise InvariantViolation("E_NOT_MATCHING", "Constructed σ is not a matching") from exc


def solve_degree2(inst: Instance) -> Matching | None:
    """Solve an instance in which every doctor has at most two edges.

    Args:
        inst (Instance): The instance.

    Returns:
        Matching | None: A stable matching, or None when none exists.

    Raises:
        PreconditionError: ``E_DEGREE`` if some doctor has more than two edges.
        InvariantViolation: If a construction step or the final stability check fails.
    """
    _require_degree2(inst)
    res = preprocess(inst, keep_trace=False)
    if not critical_hospitals(inst, res):
        if not is_stable(inst, res.matching):
            raise InvariantViolation("E_NOT_STABLE", "Pre-processed matching is not stable")
        return res.matching

    digraph = build_digraph(inst, res, analyze_components(inst, res))
    paths = find_paths(digraph)
    if paths is None:
        return None
    sigma = _construct_sigma(inst, res, digraph, paths)
    if not is_stable(inst, sigma):
        raise InvariantViolation("E_NOT_STABLE", f"Constructed σ {sigma.sorted_edges()} is not stable")
    logger.debug(f"Degree-2 solver: {len(paths)} chains, |σ|={len(sigma)}")
    return sigma
