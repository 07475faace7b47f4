"""Markov bases and indispensable binomials from fiber-graph components."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Literal, Optional, Tuple, Union

import networkx as nx

from .binomials import (
    BasisSet,
    Binomial,
    Monomial,
    a_degree,
    binomial_from_vector,
    fiber,
)
from .errors import PreconditionError
from .graph import (
    OrientedCycle,
    WeightedOrientedGraph,
    chords,
    cycle_from_edges,
    incidence_matrix,
    is_balanced,
    outer_cycle,
)
from .graver import (
    balanced_cycle_generator,
    graver_basis,
    theta_unbalanced_generator,
)
from .linalg import IntegerMatrix, IntegerVector
from .settings import ResourceCaps, get_caps

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiberGraph:
    """Fiber of one A-degree; members sharing a variable are adjacent."""

    degree: IntegerVector
    members: Tuple[Monomial, ...]
    components: Tuple[Tuple[Monomial, ...], ...]

    @property
    def is_markov_degree(self) -> bool:
        return len(self.components) >= 2

    @property
    def is_indispensable_degree(self) -> bool:
        return len(self.components) == 2 and all(len(c) == 1 for c in self.components)

    def component_of(self, u: Monomial) -> int:
        for i, component in enumerate(self.components):
            if u in component:
                return i
        raise PreconditionError(f"{u} is not in the fiber of degree {self.degree}")


def fiber_graph(
    A: IntegerMatrix, witness: Iterable[int], caps: Optional[ResourceCaps] = None
) -> FiberGraph:
    """Fiber graph of the degree of e^witness."""
    f = fiber(A, tuple(witness), caps)
    G = nx.Graph()
    G.add_nodes_from(f.members)
    for i in range(A.ncols):
        holders = [u for u in f.members if u[i] > 0]
        G.add_edges_from(zip(holders, holders[1:]))
    components = sorted(tuple(sorted(c)) for c in nx.connected_components(G))
    return FiberGraph(f.degree, f.members, tuple(components))


def _degree_key(degree: IntegerVector) -> Tuple[int, IntegerVector]:
    return sum(degree), degree


def markov_fibers(
    A: IntegerMatrix,
    graver: Optional[BasisSet] = None,
    caps: Optional[ResourceCaps] = None,
) -> List[FiberGraph]:
    """Fiber graphs of the Graver degrees with at least two components."""
    limits = get_caps(caps)
    basis = graver if graver is not None else graver_basis(A, limits)
    degrees = sorted({a_degree(b.positive, A) for b in basis}, key=_degree_key)
    witnesses = {a_degree(b.positive, A): b.positive for b in basis}
    found = []
    for degree in degrees:
        graph = fiber_graph(A, witnesses[degree], limits)
        logger.debug(
            "Degree %s: %d members in %d components",
            degree,
            len(graph.members),
            len(graph.components),
        )
        if graph.is_markov_degree:
            found.append(graph)
    return found


def markov_degrees(
    A: IntegerMatrix, caps: Optional[ResourceCaps] = None
) -> List[IntegerVector]:
    return [graph.degree for graph in markov_fibers(A, caps=caps)]


def universal_markov(
    A: IntegerMatrix,
    fibers: Optional[List[FiberGraph]] = None,
    caps: Optional[ResourceCaps] = None,
) -> BasisSet:
    """All u - v with u and v in different components of a Markov fiber."""
    elements = []
    for graph in fibers if fibers is not None else markov_fibers(A, caps=caps):
        for i, first in enumerate(graph.components):
            for second in graph.components[i + 1 :]:
                for u in first:
                    for v in second:
                        elements.append(
                            binomial_from_vector([x - y for x, y in zip(u, v)])
                        )
    result = BasisSet.build("markov", elements, A)
    logger.info("Universal Markov basis: %d elements", len(result))
    return result


def indispensables(
    A: IntegerMatrix,
    fibers: Optional[List[FiberGraph]] = None,
    caps: Optional[ResourceCaps] = None,
) -> BasisSet:
    """Binomials of the degrees whose fiber is two isolated monomials."""
    elements = []
    for graph in fibers if fibers is not None else markov_fibers(A, caps=caps):
        if graph.is_indispensable_degree:
            (u,), (v,) = graph.components
            elements.append(binomial_from_vector([x - y for x, y in zip(u, v)]))
    result = BasisSet.build("indispensable", elements, A)
    logger.info("Indispensable binomials: %d", len(result))
    return result


def is_minimal_generating_set(
    S: Union[BasisSet, Iterable[Binomial]],
    A: IntegerMatrix,
    caps: Optional[ResourceCaps] = None,
) -> bool:
    """True iff S is a minimal binomial generating set of I_A.

    In every Markov degree the elements of S must join the fiber-graph
    components into a spanning tree; no other degree may carry an element.
    """
    limits = get_caps(caps)
    by_degree: Dict[IntegerVector, List[Binomial]] = {}
    for b in S:
        if not A.annihilates(b.exponents):
            return False
        by_degree.setdefault(a_degree(b.positive, A), []).append(b)

    graphs = {graph.degree: graph for graph in markov_fibers(A, caps=limits)}
    for degree in by_degree:
        if degree not in graphs:
            logger.debug("Element of degree %s outside the Markov degrees", degree)
            return False
    for degree, graph in graphs.items():
        tree = nx.MultiGraph()
        tree.add_nodes_from(range(len(graph.components)))
        for b in by_degree.get(degree, []):
            i = graph.component_of(b.positive)
            j = graph.component_of(b.negative)
            if i == j:
                return False
            tree.add_edge(i, j)
        if not nx.is_tree(tree):
            logger.debug("Elements of degree %s do not span the components", degree)
            return False
    return True


Method = Literal["structural", "computational"]


@dataclass(frozen=True)
class IndispensabilityVerdict:
    indispensable: bool
    method: Method
    reason: str
    generator: IntegerVector


def _chord_split(
    g: WeightedOrientedGraph, c: OrientedCycle, chord: int
) -> Tuple[OrientedCycle, OrientedCycle]:
    """The two cycles a chord cuts a cycle into."""
    e = g.edges[chord]
    i, j = sorted((c.vertices.index(e.tail), c.vertices.index(e.head)))
    inside = list(c.edges[i:j])
    outside = list(c.edges[j:]) + list(c.edges[:i])
    return (
        cycle_from_edges(g, inside + [chord]),
        cycle_from_edges(g, outside + [chord]),
    )


def cycle_generator_indispensable(
    g: WeightedOrientedGraph,
    c: OrientedCycle,
    caps: Optional[ResourceCaps] = None,
) -> IndispensabilityVerdict:
    """Whether the generator of a balanced cycle is indispensable in I_D.

    A chordless cycle and a cycle with a single chord are decided from the
    graph; otherwise the fiber criterion is computed.
    """
    generator = balanced_cycle_generator(c)
    cycle_chords = chords(g, c)
    if not cycle_chords:
        return IndispensabilityVerdict(True, "structural", "chordless", generator)
    if len(cycle_chords) == 1:
        first, second = _chord_split(g, c, cycle_chords[0])
        label = g.edges[cycle_chords[0]].id
        if is_balanced(first) and is_balanced(second):
            return IndispensabilityVerdict(
                False,
                "structural",
                f"chord {label} splits the cycle into two balanced cycles",
                generator,
            )
        return IndispensabilityVerdict(
            True,
            "structural",
            f"chord {label} does not split the cycle into two balanced cycles",
            generator,
        )
    found = binomial_from_vector(generator) in indispensables(
        incidence_matrix(g), caps=caps
    )
    return IndispensabilityVerdict(
        found,
        "computational",
        f"{len(cycle_chords)} chords; fiber criterion",
        generator,
    )


def theta_generator_indispensable(
    g: WeightedOrientedGraph,
    c1: OrientedCycle,
    c2: OrientedCycle,
    caps: Optional[ResourceCaps] = None,
) -> IndispensabilityVerdict:
    """Whether the generator of two unbalanced cycles sharing a path is indispensable.

    The answer is always computed from fibers. When the two cycles and their
    outer cycle are all chordless in g the generator is expected to be
    indispensable, and a disagreement is logged.
    """
    generator = theta_unbalanced_generator(c1, c2)
    outer = outer_cycle(c1, c2)
    chordless = all(not chords(g, c) for c in (c1, c2, outer))
    found = binomial_from_vector(generator) in indispensables(
        incidence_matrix(g), caps=caps
    )
    if chordless and not found:
        logger.warning(
            "Generator of chordless theta %s is not indispensable",
            "/".join(c1.edge_labels() + c2.edge_labels()),
        )
    reason = "chordless theta" if chordless else "theta with chords"
    return IndispensabilityVerdict(found, "computational", reason, generator)
