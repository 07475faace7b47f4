"""Weighted oriented graphs: incidence matrices, cycles and obstructions."""

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import networkx as nx
from pydantic import ValidationError

from .errors import GraphValidationError, PreconditionError, ResourceCapExceeded
from .linalg import IntegerMatrix, bareiss_determinant
from .models import GraphSpec
from .settings import ResourceCaps, get_caps

logger = logging.getLogger(__name__)


class Vertex(NamedTuple):
    id: str
    weight: int


class Edge(NamedTuple):
    id: str
    tail: str
    head: str


class WeightedOrientedGraph:
    """Directed simple graph with positive vertex weights.

    Edge declaration order fixes the column order e_1..e_m of every matrix and
    exponent vector derived from the graph. Instances are immutable.
    """

    __slots__ = ("vertices", "edges", "_vertex_index", "_edge_index", "_weights", "_nx")

    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Edge]) -> None:
        self.vertices: Tuple[Vertex, ...] = tuple(vertices)
        self.edges: Tuple[Edge, ...] = tuple(edges)
        self._vertex_index = {v.id: i for i, v in enumerate(self.vertices)}
        self._edge_index = {e.id: j for j, e in enumerate(self.edges)}
        self._weights = {v.id: v.weight for v in self.vertices}
        underlying = nx.Graph()
        underlying.add_nodes_from(v.id for v in self.vertices)
        for j, e in enumerate(self.edges):
            underlying.add_edge(e.tail, e.head, index=j)
        self._nx = underlying

    def __repr__(self) -> str:
        return (
            f"WeightedOrientedGraph({len(self.vertices)} vertices, "
            f"{len(self.edges)} edges)"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedOrientedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    @property
    def edge_labels(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @property
    def vertex_ids(self) -> Tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def weight(self, vertex: str) -> int:
        return self._weights[vertex]

    def vertex_index(self, vertex: str) -> int:
        return self._vertex_index[vertex]

    def edge_index(self, edge: str) -> int:
        return self._edge_index[edge]

    def edge_between(self, u: str, v: str) -> int:
        return int(self._nx[u][v]["index"])

    def degree(self, vertex: str) -> int:
        return int(self._nx.degree[vertex])

    def underlying(self) -> nx.Graph:
        """Read-only view of the underlying undirected graph."""
        return self._nx.copy(as_view=True)

    def coefficient(self, vertex: str, edge: int) -> int:
        """Entry of the incidence matrix at (vertex, edge)."""
        e = self.edges[edge]
        if vertex == e.tail:
            return 1
        if vertex == e.head:
            return self._weights[vertex]
        return 0

    def subgraph(self, edges: Iterable[int]) -> "WeightedOrientedGraph":
        """Graph on the given edges (declaration order kept) and their endpoints."""
        chosen = sorted(set(edges))
        used = {x for j in chosen for x in (self.edges[j].tail, self.edges[j].head)}
        return WeightedOrientedGraph(
            [v for v in self.vertices if v.id in used],
            [self.edges[j] for j in chosen],
        )


def build_graph(
    vertex_weights: Union[Mapping[str, int], Iterable[Tuple[str, int]]],
    edges: Iterable[Tuple[str, str, str]],
) -> WeightedOrientedGraph:
    """Validate vertex weights and directed edges ``(id, tail, head)``."""
    pairs = (
        list(vertex_weights.items())
        if isinstance(vertex_weights, Mapping)
        else list(vertex_weights)
    )
    payload = {
        "vertices": [{"id": vid, "w": w} for vid, w in pairs],
        "edges": [{"id": eid, "tail": t, "head": h} for eid, t, h in edges],
    }
    return graph_from_spec(_validated_spec(payload))


def _validated_spec(payload: object) -> GraphSpec:
    try:
        return GraphSpec.model_validate(payload)
    except ValidationError as e:
        raise GraphValidationError(_describe_validation_error(e)) from e


def _describe_validation_error(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "graph"
        problems.append(f"{location}: {item['msg']}")
    return "Invalid graph: " + "; ".join(problems)


def graph_from_spec(spec: GraphSpec) -> WeightedOrientedGraph:
    return WeightedOrientedGraph(
        [Vertex(v.id, v.w) for v in spec.vertices],
        [Edge(e.id, e.tail, e.head) for e in spec.edges],
    )


def graph_from_json(text: str) -> WeightedOrientedGraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphValidationError(f"Malformed graph JSON: {e}") from e
    return graph_from_spec(_validated_spec(payload))


def load_graph(path: Union[str, Path]) -> WeightedOrientedGraph:
    """Read a graph from its JSON file."""
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as e:
        raise GraphValidationError(f"Cannot read graph file {source}: {e}") from e
    return graph_from_json(text)


def graph_to_json(g: WeightedOrientedGraph) -> str:
    spec = GraphSpec.model_validate(
        {
            "vertices": [{"id": v.id, "w": v.weight} for v in g.vertices],
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in g.edges],
        }
    )
    return spec.model_dump_json(indent=2)


def incidence_matrix(g: WeightedOrientedGraph) -> IntegerMatrix:
    """Vertex-by-edge matrix: 1 at the tail row, w_head at the head row."""
    rows = [[0] * len(g.edges) for _ in g.vertices]
    for j, e in enumerate(g.edges):
        rows[g.vertex_index(e.tail)][j] = 1
        rows[g.vertex_index(e.head)][j] = g.weight(e.head)
    return IntegerMatrix.from_rows(
        rows, ncols=len(g.edges), row_labels=g.vertex_ids, col_labels=g.edge_labels
    )


@dataclass(frozen=True)
class GraphPath:
    """Simple path given by its vertices and the edges joining them."""

    vertices: Tuple[str, ...]
    edges: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class OrientedCycle:
    """Simple cycle in canonical traversal.

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[i + 1]`` (cyclically);
    ``forward[i]`` is True when that edge points along the traversal.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[int, ...]
    forward: Tuple[bool, ...]
    graph: WeightedOrientedGraph = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)

    def edge_labels(self) -> Tuple[str, ...]:
        return tuple(self.graph.edges[j].id for j in self.edges)

    def incidence_matrix(self) -> IntegerMatrix:
        """The cycle's own matrix: rows and columns in traversal order."""
        rows = [
            [self.graph.coefficient(v, j) for j in self.edges] for v in self.vertices
        ]
        return IntegerMatrix.from_rows(
            rows,
            ncols=len(self.edges),
            row_labels=self.vertices,
            col_labels=self.edge_labels(),
        )


def _traversal(g: WeightedOrientedGraph, vertices: Sequence[str]) -> OrientedCycle:
    """Canonical cycle through ``vertices`` given in cyclic order."""
    order = [g.vertex_index(v) for v in vertices]
    start = order.index(min(order))
    rotated = list(vertices[start:]) + list(vertices[:start])
    if len(rotated) > 2 and g.vertex_index(rotated[-1]) < g.vertex_index(rotated[1]):
        rotated = [rotated[0]] + rotated[:0:-1]
    edges = []
    forward = []
    for i, u in enumerate(rotated):
        v = rotated[(i + 1) % len(rotated)]
        j = g.edge_between(u, v)
        edges.append(j)
        forward.append(g.edges[j].tail == u)
    return OrientedCycle(tuple(rotated), tuple(edges), tuple(forward), g)


def _cycle_key(
    g: WeightedOrientedGraph, c: OrientedCycle
) -> Tuple[int, Tuple[int, ...]]:
    return len(c.vertices), tuple(g.vertex_index(v) for v in c.vertices)


def enumerate_cycles(
    g: WeightedOrientedGraph, caps: Optional[ResourceCaps] = None
) -> List[OrientedCycle]:
    """All simple cycles of the underlying graph, once each, canonically ordered."""
    limit = get_caps(caps).max_cycles
    found = []
    for nodes in nx.simple_cycles(g.underlying()):
        found.append(_traversal(g, nodes))
        if len(found) > limit:
            raise ResourceCapExceeded("max_cycles", limit, "cycle enumeration")
    found.sort(key=lambda c: _cycle_key(g, c))
    logger.debug("Enumerated %d cycles", len(found))
    return found


def cycle_from_edges(g: WeightedOrientedGraph, edges: Iterable[int]) -> OrientedCycle:
    """Canonical cycle with exactly the given edge set."""
    chosen = sorted(set(edges))
    if len(chosen) < 3:
        raise PreconditionError(f"{len(chosen)} edges cannot form a simple cycle")
    adjacency: Dict[str, List[str]] = {}
    for j in chosen:
        e = g.edges[j]
        adjacency.setdefault(e.tail, []).append(e.head)
        adjacency.setdefault(e.head, []).append(e.tail)
    if any(len(neighbors) != 2 for neighbors in adjacency.values()):
        raise PreconditionError(
            f"Edges {_labels(g, chosen)} do not form a cycle (vertex degree != 2)"
        )
    start = min(adjacency, key=g.vertex_index)
    walk = [start]
    previous, current = None, start
    while True:
        a, b = adjacency[current]
        step = b if a == previous else a
        if step == start:
            break
        walk.append(step)
        previous, current = current, step
    if len(walk) != len(chosen):
        raise PreconditionError(
            f"Edges {_labels(g, chosen)} form more than one cycle"
        )
    return _traversal(g, walk)


def _labels(g: WeightedOrientedGraph, edges: Iterable[int]) -> List[str]:
    return [g.edges[j].id for j in edges]


def is_balanced(c: OrientedCycle) -> bool:
    """True iff the cycle's incidence matrix is singular."""
    if c.length % 2 == 1:
        return False
    return bareiss_determinant(c.incidence_matrix().entries) == 0


def cycle_minors(c: OrientedCycle) -> List[int]:
    """M_{L-1}(A(C)[1|i]) for i = 1..L in traversal order."""
    matrix = c.incidence_matrix()
    return [
        bareiss_determinant(matrix.delete(rows=[0], cols=[i]).entries)
        for i in range(c.length)
    ]


def chords(g: WeightedOrientedGraph, c: OrientedCycle) -> List[int]:
    """Edges outside ``c`` joining two vertices of ``c``."""
    on_cycle = set(c.vertices)
    return [
        j
        for j, e in enumerate(g.edges)
        if j not in c.edge_set and e.tail in on_cycle and e.head in on_cycle
    ]


def cycle_sources_sinks(c: OrientedCycle) -> Tuple[List[str], List[str]]:
    """Vertices with in-degree 0 and out-degree 0 along the cycle."""
    sources = []
    sinks = []
    for i, v in enumerate(c.vertices):
        incoming = c.edges[i - 1]
        outgoing = c.edges[i]
        heads = [c.graph.edges[incoming].head, c.graph.edges[outgoing].head]
        if v not in heads:
            sources.append(v)
        elif heads.count(v) == 2:
            sinks.append(v)
    return sources, sinks


def outer_cycle(
    c1: OrientedCycle, c2: OrientedCycle, path: Optional[GraphPath] = None
) -> OrientedCycle:
    """Cycle on (E(C_1) ∪ E(C_2)) \\ E(P) for two cycles sharing the path P."""
    if c1.edge_set == c2.edge_set:
        raise PreconditionError("Outer cycle of a cycle with itself")
    shared = c1.edge_set & c2.edge_set
    if not shared:
        raise PreconditionError("Cycles do not share an edge")
    if path is not None and frozenset(path.edges) != shared:
        raise PreconditionError(
            f"Cycles share {sorted(_labels(c1.graph, shared))}, "
            f"not the path {_labels(c1.graph, path.edges)}"
        )
    _as_path(c1.graph, shared)
    return cycle_from_edges(c1.graph, c1.edge_set ^ c2.edge_set)


def _as_path(g: WeightedOrientedGraph, edges: Iterable[int]) -> GraphPath:
    """Order an edge set as a simple path; error if it is not one."""
    chosen = sorted(set(edges))
    adjacency: Dict[str, List[Tuple[str, int]]] = {}
    for j in chosen:
        e = g.edges[j]
        adjacency.setdefault(e.tail, []).append((e.head, j))
        adjacency.setdefault(e.head, []).append((e.tail, j))
    ends = [v for v, nbrs in adjacency.items() if len(nbrs) == 1]
    if len(ends) != 2 or any(len(nbrs) > 2 for nbrs in adjacency.values()):
        raise PreconditionError(f"Shared edges {_labels(g, chosen)} are not a path")
    start = min(ends, key=g.vertex_index)
    vertices = [start]
    path_edges: List[int] = []
    current = start
    while len(path_edges) < len(chosen):
        step = next(
            (
                (v, j)
                for v, j in adjacency[current]
                if not path_edges or j != path_edges[-1]
            ),
            None,
        )
        if step is None:
            raise PreconditionError(
                f"Shared edges {_labels(g, chosen)} are not a single path"
            )
        path_edges.append(step[1])
        vertices.append(step[0])
        current = step[0]
    if len(set(vertices)) != len(vertices):
        raise PreconditionError(f"Shared edges {_labels(g, chosen)} are not a path")
    return GraphPath(tuple(vertices), tuple(path_edges))


@dataclass(frozen=True)
class SharedPathDecomposition:
    """D = C_1 ∪_P ⋯ ∪_P C_n.

    ``path`` runs from the first branch vertex to the second; ``arcs[i]`` is
    C_i \\ P, running back from the second branch vertex to the first.
    """

    graph: WeightedOrientedGraph = field(repr=False)
    path: GraphPath
    arcs: Tuple[GraphPath, ...]
    cycles: Tuple[OrientedCycle, ...]
    balanced: Tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.cycles)

    @property
    def path_length(self) -> int:
        return self.path.length

    @property
    def unit_path(self) -> bool:
        return self.path.length == 1

    @property
    def unit_arcs(self) -> Tuple[bool, ...]:
        return tuple(arc.length == 1 for arc in self.arcs)

    @property
    def unbalanced_count(self) -> int:
        return sum(1 for b in self.balanced if not b)

    def reassembled_edges(self) -> List[int]:
        """Edges of P followed by every arc; a permutation of all graph edges."""
        return list(self.path.edges) + [j for arc in self.arcs for j in arc.edges]


def _branch_paths(g: WeightedOrientedGraph, x: str) -> List[GraphPath]:
    """Walk every edge at ``x`` through degree-2 vertices to the next branch vertex."""
    paths = []
    underlying = g.underlying()
    for first in sorted(underlying[x], key=lambda v: g.edge_between(x, v)):
        vertices = [x, first]
        edges = [g.edge_between(x, first)]
        while g.degree(vertices[-1]) == 2:
            previous, current = vertices[-2], vertices[-1]
            step = next(v for v in underlying[current] if v != previous)
            edges.append(g.edge_between(current, step))
            vertices.append(step)
        paths.append(GraphPath(tuple(vertices), tuple(edges)))
    return paths


def shared_path_decomposition(
    g: WeightedOrientedGraph,
) -> Optional[SharedPathDecomposition]:
    """Decompose g as n >= 2 cycles pairwise meeting exactly in a common path.

    The shared path is the shortest branch path between the two branch
    vertices, ties broken by the lexicographically least edge sequence.
    """
    if not g.edges or not nx.is_connected(g.underlying()):
        return None
    degrees = {v: g.degree(v) for v in g.vertex_ids}
    branch = [v for v in g.vertex_ids if degrees[v] >= 3]
    if len(branch) != 2 or any(d < 2 for d in degrees.values()):
        return None
    x, y = sorted(branch, key=g.vertex_index)

    paths = _branch_paths(g, x)
    if any(p.vertices[-1] != y for p in paths):
        return None
    paths.sort(key=lambda p: (p.length, p.edges))
    shared, others = paths[0], paths[1:]
    others.sort(key=lambda p: tuple(sorted(p.edges)))

    arcs = tuple(
        GraphPath(tuple(reversed(p.vertices)), tuple(reversed(p.edges)))
        for p in others
    )
    cycles = tuple(cycle_from_edges(g, shared.edges + arc.edges) for arc in arcs)
    decomposition = SharedPathDecomposition(
        graph=g,
        path=shared,
        arcs=arcs,
        cycles=cycles,
        balanced=tuple(is_balanced(c) for c in cycles),
    )
    logger.debug(
        "Shared-path decomposition: n=%d, l(P)=%d", decomposition.n, shared.length
    )
    return decomposition


@dataclass(frozen=True)
class D1Occurrence:
    """Two balanced cycles sharing exactly one edge, the rest forming a cycle."""

    first: OrientedCycle
    second: OrientedCycle
    shared_edge: int
    outer: OrientedCycle


@dataclass(frozen=True)
class D2Occurrence:
    """A balanced and two unbalanced cycles through one edge, unbalanced outer."""

    balanced: OrientedCycle
    first_unbalanced: OrientedCycle
    second_unbalanced: OrientedCycle
    shared_edge: int
    outer: OrientedCycle


def detect_D1(
    g: WeightedOrientedGraph,
    cycles: Optional[Sequence[OrientedCycle]] = None,
    caps: Optional[ResourceCaps] = None,
) -> List[D1Occurrence]:
    if cycles is None:
        cycles = enumerate_cycles(g, caps)
    balanced = [c for c in cycles if is_balanced(c)]
    found = []
    for c1, c2 in combinations(balanced, 2):
        shared = c1.edge_set & c2.edge_set
        if len(shared) != 1:
            continue
        try:
            outer = outer_cycle(c1, c2)
        except PreconditionError:
            continue
        found.append(D1Occurrence(c1, c2, next(iter(shared)), outer))
    return found


def detect_D2(
    g: WeightedOrientedGraph,
    cycles: Optional[Sequence[OrientedCycle]] = None,
    caps: Optional[ResourceCaps] = None,
) -> List[D2Occurrence]:
    if cycles is None:
        cycles = enumerate_cycles(g, caps)
    balance = {c.edge_set: is_balanced(c) for c in cycles}
    found = []
    for e in range(len(g.edges)):
        through = [c for c in cycles if e in c.edge_set]
        balanced = [c for c in through if balance[c.edge_set]]
        unbalanced = [c for c in through if not balance[c.edge_set]]
        for first, second in combinations(unbalanced, 2):
            if first.edge_set & second.edge_set != {e}:
                continue
            outer_edges = first.edge_set ^ second.edge_set
            if outer_edges not in balance or balance[outer_edges]:
                continue
            outer = next(c for c in cycles if c.edge_set == outer_edges)
            for c1 in balanced:
                if c1.edge_set & first.edge_set != {e}:
                    continue
                if c1.edge_set & second.edge_set != {e}:
                    continue
                found.append(D2Occurrence(c1, first, second, e, outer))
    return found
