"""Plain helpers shared by the test modules."""

import random
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from wog_toric.server.algebra.binomials import BasisSet, parse_binomial
from wog_toric.server.algebra.graph import (
    Edge,
    Vertex,
    WeightedOrientedGraph,
    incidence_matrix,
    load_graph,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

FIG4_GRAVER = [
    (-2, 4, 0, 1, -1, 2, -4, 0),
    (0, 0, -1, 0, 1, -1, 2, -1),
    (-2, 4, -1, 1, 0, 1, -2, -1),
    (-2, 4, -2, 1, 1, 0, 0, -2),
]

FIG5_GRAVER = [
    (3, 3, -1, -8, 2, 4, -4),
    (7, 0, 0, -12, 3, 10, -10),
    (4, -3, 1, -4, 1, 6, -6),
    (1, -6, 2, 4, -1, 2, -2),
    (2, 9, -3, -12, 3, 2, -2),
    (1, 15, -5, -16, 4, 0, 0),
    (0, 21, -7, -20, 5, -2, 2),
    (5, -9, 3, 0, 0, 8, -8),
]

FIG5_NOT_MARKOV = (0, 21, -7, -20, 5, -2, 2)


def load_fixture(name: str) -> WeightedOrientedGraph:
    return load_graph(FIXTURES / f"{name}.json")


def basis_of(g: WeightedOrientedGraph, vectors: Sequence[Sequence[int]]) -> BasisSet:
    return BasisSet.build("input", [tuple(v) for v in vectors], incidence_matrix(g))


def basis_from_strings(g: WeightedOrientedGraph, texts: Sequence[str]) -> BasisSet:
    labels = g.edge_labels
    return BasisSet.build(
        "input", [parse_binomial(t, labels) for t in texts], incidence_matrix(g)
    )



def cycle_graph(
    weights: Sequence[int], forward: Sequence[bool]
) -> WeightedOrientedGraph:
    """Cycle v1 - v2 - ... - vL - v1; edge i points v_i -> v_{i+1} when forward."""
    n = len(weights)
    vertices = [Vertex(f"v{i + 1}", w) for i, w in enumerate(weights)]
    edges = []
    for i in range(n):
        u, v = f"v{i + 1}", f"v{(i + 1) % n + 1}"
        edges.append(Edge(f"e{i + 1}", u, v) if forward[i] else Edge(f"e{i + 1}", v, u))
    return WeightedOrientedGraph(vertices, edges)


def square_and_hexagon() -> WeightedOrientedGraph:
    """a-b-c-d and a-b-x-c-y-z share only a-b but also meet at c."""
    pairs = ["ab", "bc", "cd", "da", "bx", "xc", "cy", "yz", "za"]
    vertices = [Vertex(v, 1) for v in "abcdxyz"]
    edges = [Edge(f"e{i + 1}", u, v) for i, (u, v) in enumerate(pairs)]
    return WeightedOrientedGraph(vertices, edges)


def shared_path_graph(
    rng: random.Random,
    path_lengths: Sequence[int],
    max_weight: int,
) -> WeightedOrientedGraph:
    """Internally disjoint paths between v1 and v2, random weights and directions.

    ``path_lengths[0]`` is the shared path; at most one length may be 1.
    """
    names = ["v1", "v2"]
    edges: List[Edge] = []
    for length in path_lengths:
        inner = [f"v{len(names) + i + 1}" for i in range(length - 1)]
        names.extend(inner)
        walk = ["v1"] + inner + ["v2"]
        for u, v in zip(walk, walk[1:]):
            label = f"e{len(edges) + 1}"
            edges.append(Edge(label, u, v) if rng.random() < 0.5 else Edge(label, v, u))
    vertices = [Vertex(name, rng.randint(1, max_weight)) for name in names]
    return WeightedOrientedGraph(vertices, edges)


def random_theta(
    rng: random.Random, max_edges: int = 12, max_weight: int = 6
) -> WeightedOrientedGraph:
    while True:
        lengths = [rng.randint(1, 5) for _ in range(3)]
        if sorted(lengths)[1] == 1 or sum(lengths) > max_edges:
            continue
        lengths.sort()
        return shared_path_graph(rng, lengths, max_weight)


def random_graph(
    rng: random.Random,
    max_vertices: int = 8,
    max_extra_edges: int = 4,
    max_weight: int = 2,
) -> WeightedOrientedGraph:
    """Random spanning tree plus a few chords, random weights and directions."""
    n = rng.randint(4, max_vertices)
    names = [f"v{i + 1}" for i in range(n)]
    pairs = [(names[rng.randrange(i)], names[i]) for i in range(1, n)]
    tree = set(pairs)
    extra = [
        (u, v)
        for i, u in enumerate(names)
        for v in names[i + 1 :]
        if (u, v) not in tree
    ]
    rng.shuffle(extra)
    pairs += extra[: rng.randint(1, max_extra_edges)]
    edges = []
    for j, (u, v) in enumerate(pairs):
        label = f"e{j + 1}"
        edges.append(Edge(label, u, v) if rng.random() < 0.5 else Edge(label, v, u))
    vertices = [Vertex(name, rng.randint(1, max_weight)) for name in names]
    return WeightedOrientedGraph(vertices, edges)


def sample(
    rng: random.Random,
    make: Callable[[random.Random], WeightedOrientedGraph],
    accept: Callable[[WeightedOrientedGraph], bool],
    attempts: int = 10_000,
) -> Optional[WeightedOrientedGraph]:
    """First generated graph passing ``accept``, or None."""
    for _ in range(attempts):
        g = make(rng)
        if accept(g):
            return g
    return None

