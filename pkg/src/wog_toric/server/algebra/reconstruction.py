"""Recover edge orientations from vertex weights and known kernel vectors."""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import GraphValidationError, ResourceCapExceeded
from .graph import (
    Edge,
    Vertex,
    WeightedOrientedGraph,
    cycle_from_edges,
    is_balanced,
)

logger = logging.getLogger(__name__)

UndirectedEdge = Tuple[str, str, str]

DEFAULT_SEARCH_CAP = 1 << 20


def reconstruct_orientations(
    weights: Mapping[str, int],
    undirected_edges: Sequence[UndirectedEdge],
    kernel_vectors: Sequence[Sequence[int]],
    balanced: Optional[Mapping[Tuple[str, ...], bool]] = None,
    cap: Optional[int] = None,
) -> List[WeightedOrientedGraph]:
    """All orientations whose incidence matrix annihilates every kernel vector.

    ``undirected_edges`` holds (id, u, v) triples in column order. Edges are
    oriented one at a time; a vertex equation is checked as soon as every
    edge at that vertex has a direction. ``balanced`` optionally maps a cycle,
    given by its edge ids, to the balance it must have.
    """
    limit = cap if cap is not None else DEFAULT_SEARCH_CAP
    ids = [e[0] for e in undirected_edges]
    for vector in kernel_vectors:
        if len(vector) != len(undirected_edges):
            raise GraphValidationError(
                f"Kernel vector of length {len(vector)} for {len(ids)} edges"
            )
    for edge_id, u, v in undirected_edges:
        for end in (u, v):
            if end not in weights:
                raise GraphValidationError(
                    f"edge {edge_id!r} uses unknown vertex {end!r}"
                )

    last_edge: Dict[str, int] = {}
    incident: Dict[str, List[int]] = {v: [] for v in weights}
    for j, (_, u, v) in enumerate(undirected_edges):
        for end in (u, v):
            last_edge[end] = j
            incident[end].append(j)
    closing: Dict[int, List[str]] = {}
    for vertex, j in last_edge.items():
        closing.setdefault(j, []).append(vertex)

    tails: List[str] = [""] * len(undirected_edges)
    found: List[WeightedOrientedGraph] = []
    visited = 0

    def vertex_holds(vertex: str) -> bool:
        for vector in kernel_vectors:
            total = 0
            for j in incident[vertex]:
                coefficient = 1 if tails[j] == vertex else weights[vertex]
                total += coefficient * vector[j]
            if total != 0:
                return False
        return True

    def build() -> WeightedOrientedGraph:
        edges = []
        for j, (edge_id, u, v) in enumerate(undirected_edges):
            head = v if tails[j] == u else u
            edges.append(Edge(edge_id, tails[j], head))
        return WeightedOrientedGraph(
            [Vertex(v, w) for v, w in weights.items()], edges
        )

    def descend(j: int) -> None:
        nonlocal visited
        if j == len(undirected_edges):
            g = build()
            if balanced and not all(
                is_balanced(cycle_from_edges(g, [g.edge_index(e) for e in cycle]))
                == expected
                for cycle, expected in balanced.items()
            ):
                return
            found.append(g)
            return
        _, u, v = undirected_edges[j]
        for tail in (u, v):
            visited += 1
            if visited > limit:
                raise ResourceCapExceeded("orientation_search", limit)
            tails[j] = tail
            if all(vertex_holds(x) for x in closing.get(j, [])):
                descend(j + 1)

    descend(0)
    logger.info(
        "Orientation search: %d consistent orientations, %d nodes", len(found), visited
    )
    return found
