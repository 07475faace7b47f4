"""Graver bases, circuits and closed-form generators of weighted oriented graphs."""

import heapq
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Set, Tuple

from .binomials import BasisSet, conformal_leq
from .errors import (
    InternalConsistencyError,
    NotInKernelError,
    PreconditionError,
    ResourceCapExceeded,
    ZeroVectorError,
)
from .graph import (
    GraphPath,
    OrientedCycle,
    SharedPathDecomposition,
    WeightedOrientedGraph,
    cycle_minors,
    incidence_matrix,
    is_balanced,
    outer_cycle,
)
from .linalg import (
    IntegerMatrix,
    IntegerVector,
    bareiss_determinant,
    enumerate_lattice_box,
    integer_kernel_basis,
    kernel_basis,
    primitive_integer_vector,
    rank,
)
from .settings import ResourceCaps, get_caps

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def _norm(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


def _minimal_elements(vectors: Sequence[IntegerVector]) -> List[IntegerVector]:
    """Nonzero vectors with no other nonzero vector of the list conformally below."""
    kept: List[IntegerVector] = []
    for v in sorted(set(vectors), key=lambda u: (_norm(u), u)):
        if not any(v):
            continue
        if not any(conformal_leq(u, v) for u in kept):
            kept.append(v)
    return kept


def _conformal_normal_form(
    s: IntegerVector, generators: Sequence[IntegerVector]
) -> IntegerVector:
    current = list(s)
    reduced = True
    while reduced and any(current):
        reduced = False
        for g in generators:
            if conformal_leq(g, current):
                current = [x - y for x, y in zip(current, g)]
                reduced = True
                break
    return tuple(current)


def graver_basis(A: IntegerMatrix, caps: Optional[ResourceCaps] = None) -> BasisSet:
    """Primitive binomials of ker_Z(A) by completion of a lattice basis.

    Sums of pairs are taken from a queue ordered by 1-norm and reduced by
    conformal normal form against the current set; non-zero remainders join
    the set together with their negatives. The ⊑-minimal elements of the
    final set form the Graver basis.
    """
    limit = get_caps(caps).graver_size
    basis = integer_kernel_basis(A)
    generators: List[IntegerVector] = []
    queued: Set[IntegerVector] = set()
    queue: List[Tuple[int, IntegerVector]] = []

    def push(v: IntegerVector) -> None:
        if any(v) and v not in queued:
            queued.add(v)
            heapq.heappush(queue, (_norm(v), v))

    for v in basis:
        push(v)
        push(tuple(-x for x in v))

    processed = 0
    while queue:
        _, s = heapq.heappop(queue)
        processed += 1
        r = _conformal_normal_form(s, generators)
        if not any(r):
            continue
        for candidate in (r, tuple(-x for x in r)):
            for g in generators:
                push(tuple(x + y for x, y in zip(candidate, g)))
            generators.append(candidate)
        if len(generators) > limit:
            raise ResourceCapExceeded(
                "graver_size", limit, f"completion set after {processed} reductions"
            )

    minimal = _minimal_elements(generators)
    result = BasisSet.build("graver", minimal, A)
    logger.info(
        "Graver basis: %d elements (%d completion vectors, %d reductions)",
        len(result),
        len(generators),
        processed,
    )
    return result


def is_primitive(
    m: Sequence[int], A: IntegerMatrix, caps: Optional[ResourceCaps] = None
) -> bool:
    """True iff no nonzero kernel vector other than m lies conformally below m."""
    vector = tuple(int(x) for x in m)
    if not A.annihilates(vector):
        raise NotInKernelError(f"{vector} is not in the kernel of A")
    if not any(vector):
        raise ZeroVectorError("The zero vector is not a binomial")
    lower = [min(0, x) for x in vector]
    upper = [max(0, x) for x in vector]
    zero = tuple(0 for _ in vector)
    for point in enumerate_lattice_box(
        zero,
        integer_kernel_basis(A),
        lower,
        upper,
        cap=get_caps(caps).fiber_candidates,
    ):
        if point != zero and point != vector:
            return False
    return True


def _embed(
    g: WeightedOrientedGraph, edges: Sequence[int], values: Sequence[int]
) -> IntegerVector:
    full = [0] * len(g.edges)
    for j, x in zip(edges, values):
        full[j] = x
    return tuple(full)


def balanced_cycle_generator(c: OrientedCycle) -> IntegerVector:
    """Primitive generator of a balanced cycle from the cofactors of its first row.

    The vector is returned over all edges of the ambient graph, zero off the
    cycle.
    """
    if not is_balanced(c):
        raise PreconditionError(
            f"Cycle {'-'.join(c.vertices)} is not balanced; its kernel is trivial"
        )
    minors = cycle_minors(c)
    cofactors = [(-1) ** i * x for i, x in enumerate(minors)]
    generator = primitive_integer_vector(cofactors)

    kernel = kernel_basis(c.incidence_matrix())
    if len(kernel) != 1 or primitive_integer_vector(kernel[0]) != generator:
        raise InternalConsistencyError(
            f"Cofactor generator {generator} disagrees with the kernel of "
            f"cycle {'-'.join(c.vertices)}"
        )
    return primitive_integer_vector(_embed(c.graph, c.edges, generator))


def theta_unbalanced_generator(
    c_i: OrientedCycle, c_j: OrientedCycle
) -> IntegerVector:
    """Generator of the toric ideal of two unbalanced cycles sharing a path.

    The outer cycle must be unbalanced as well; the kernel on the union of
    the three cycles is then one-dimensional.
    """
    for c in (c_i, c_j):
        if is_balanced(c):
            raise PreconditionError(f"Cycle {'-'.join(c.vertices)} is balanced")
    outer = outer_cycle(c_i, c_j)
    if is_balanced(outer):
        raise PreconditionError(
            f"Outer cycle {'-'.join(outer.vertices)} is balanced"
        )
    g = c_i.graph
    edges = sorted(c_i.edge_set | c_j.edge_set)
    kernel = kernel_basis(incidence_matrix(g).select_columns(edges))
    if len(kernel) != 1:
        raise PreconditionError(
            f"Kernel on the theta graph has dimension {len(kernel)}, expected 1"
        )
    generator = primitive_integer_vector(kernel[0])
    return primitive_integer_vector(_embed(g, edges, generator))


def circuits(A: IntegerMatrix, caps: Optional[ResourceCaps] = None) -> BasisSet:
    """Primitive kernel vectors of inclusion-minimal support."""
    limits = get_caps(caps)
    if A.ncols > limits.circuit_columns:
        raise ResourceCapExceeded(
            "circuit_columns",
            limits.circuit_columns,
            f"matrix with {A.ncols} columns",
        )
    row_masks = [
        sum(1 << j for j, x in enumerate(row) if x != 0) for row in A.entries
    ]
    found = []
    for size in range(2, min(rank(A) + 1, A.ncols) + 1):
        for cols in combinations(range(A.ncols), size):
            mask = sum(1 << j for j in cols)
            # a row meeting the support once forces that coordinate to zero
            if any(bin(r & mask).count("1") == 1 for r in row_masks):
                continue
            sub = A.select_columns(cols)
            if rank(sub) != size - 1:
                continue
            (vector,) = kernel_basis(sub)
            if any(x == 0 for x in vector):
                continue
            full = [0] * A.ncols
            for j, x in zip(cols, primitive_integer_vector(vector)):
                full[j] = x
            found.append(tuple(full))
    result = BasisSet.build("circuits", found, A)
    logger.info("Circuits: %d elements", len(result))
    return result


def graver_oracle(
    A: IntegerMatrix, bound: int, caps: Optional[ResourceCaps] = None
) -> BasisSet:
    """Brute-force Graver basis inside the box ‖v‖∞ <= bound."""
    basis = integer_kernel_basis(A)
    if len(basis) > 3:
        raise PreconditionError(
            f"Oracle needs kernel dimension <= 3, got {len(basis)}"
        )
    n = A.ncols
    points = list(
        enumerate_lattice_box(
            tuple([0] * n),
            basis,
            [-bound] * n,
            [bound] * n,
            cap=get_caps(caps).fiber_candidates,
        )
    )
    return BasisSet.build("graver", _minimal_elements(points), A)


@dataclass(frozen=True)
class SharedPathGraverReport:
    """Closed-form Graver basis of two balanced cycles sharing a path.

    ``edge_order[i]`` is the graph edge carrying internal label e_{i+1}: the
    shared path first, then the rest of C_m, then the rest of C_n. Vectors
    are reported over graph edges.
    """

    k: int
    m: int
    n: int
    edge_order: Tuple[int, ...]
    minors_C_m: Tuple[int, ...]
    minors_C_n: Tuple[int, ...]
    minors_C: Tuple[int, ...]
    d_a: int
    d_b: int
    d_c: int
    a: IntegerVector
    b: IntegerVector
    c: IntegerVector
    d: Tuple[int, int, int, int, int, int]
    E: Tuple[Tuple[Pair, ...], Tuple[Pair, ...], Tuple[Pair, ...]]
    minimal_E: Tuple[Tuple[Pair, ...], Tuple[Pair, ...], Tuple[Pair, ...]]
    S: Tuple[
        Tuple[IntegerVector, ...], Tuple[IntegerVector, ...], Tuple[IntegerVector, ...]
    ]
    basis: BasisSet = field(repr=False)


def _first_row_minors(
    g: WeightedOrientedGraph, vertices: Sequence[str], edges: Sequence[int]
) -> List[int]:
    rows = [[g.coefficient(v, j) for j in edges] for v in vertices]
    return [
        bareiss_determinant([row[:i] + row[i + 1 :] for row in rows[1:]])
        for i in range(len(edges))
    ]


def _gcd(values: Sequence[int]) -> int:
    result = 0
    for x in values:
        result = math.gcd(result, x)
    return result


def _pairs(
    d_first: int,
    d_second: int,
    first: Sequence[int],
    second: Sequence[int],
) -> List[Pair]:
    """(p, q) in [d_first-1]×[d_second-1] with p/d·|x_j| + q/d'·|y_j| integral."""
    found = []
    modulus = d_first * d_second
    for p in range(1, d_first):
        for q in range(1, d_second):
            if all(
                (p * abs(x) * d_second + q * abs(y) * d_first) % modulus == 0
                for x, y in zip(first, second)
            ):
                found.append((p, q))
    return found


def _minimal_pairs(pairs: Sequence[Pair]) -> List[Pair]:
    return [
        (p, q)
        for p, q in pairs
        if not any((r, s) != (p, q) and r <= p and s <= q for r, s in pairs)
    ]


def _combine(
    p: int, d: int, x: Sequence[int], q: int, d_prime: int, y: Sequence[int]
) -> IntegerVector:
    values = [Fraction(p, d) * s + Fraction(q, d_prime) * t for s, t in zip(x, y)]
    if any(v.denominator != 1 for v in values):
        raise InternalConsistencyError(
            f"Combination {p}/{d}, {q}/{d_prime} is not integral"
        )
    return tuple(int(v) for v in values)


def _cycle_order(path: GraphPath, arc: GraphPath) -> Tuple[List[str], List[int]]:
    return list(path.vertices) + list(arc.vertices[1:-1]), list(path.edges + arc.edges)


def shared_path_two_balanced_graver(
    decomposition: SharedPathDecomposition,
) -> SharedPathGraverReport:
    """Graver basis of C_m ∪_P C_n for balanced C_m and C_n from cycle minors.

    Internally the edges are relabelled so that the shared path comes first,
    running from its first branch vertex; the arcs of C_m and C_n follow it,
    each running back to that vertex.
    """
    if decomposition.n != 2 or not all(decomposition.balanced):
        raise PreconditionError(
            "Closed form needs exactly two balanced cycles sharing a path"
        )
    g = decomposition.graph
    path = decomposition.path
    arc_m, arc_n = decomposition.arcs
    k = path.length
    m = k + arc_m.length
    n = k + arc_n.length
    total = m + n - k
    edge_order = tuple(path.edges + arc_m.edges + arc_n.edges)

    minors_m = _first_row_minors(g, *_cycle_order(path, arc_m))
    minors_n = _first_row_minors(g, *_cycle_order(path, arc_n))
    outer_vertices = list(reversed(arc_m.vertices)) + list(arc_n.vertices[1:-1])
    outer_edges = list(reversed(arc_m.edges)) + list(arc_n.edges)
    minors_c = _first_row_minors(g, outer_vertices, outer_edges)

    # 1-based internal labels as in the closed form
    raw_a = [0] * (total + 1)
    raw_b = [0] * (total + 1)
    raw_c = [0] * (total + 1)
    for i in range(1, m + 1):
        raw_a[i] = (-1) ** (i + 1) * minors_m[i - 1]
    for i in range(1, k + 1):
        raw_b[i] = (-1) ** (i + 1) * minors_n[i - 1]
    for i in range(m + 1, total + 1):
        raw_b[i] = (-1) ** (i + k + 1) * minors_n[k - m + i - 1]
    for i in range(k + 1, m + 1):
        raw_c[i] = (-1) ** (i + k + 1) * minors_c[m - i]
    for i in range(m + 1, total + 1):
        raw_c[i] = (-1) ** i * minors_c[i - k - 1]

    d_a, d_b, d_c = (_gcd(v) for v in (raw_a, raw_b, raw_c))
    if 0 in (d_a, d_b, d_c):
        raise InternalConsistencyError("A cycle minor vector vanished")
    a = [x // d_a for x in raw_a]
    b = [x // d_b for x in raw_b]
    c = [x // d_c for x in raw_c]

    A = incidence_matrix(g)

    def to_graph(v: Sequence[int]) -> IntegerVector:
        full = [0] * len(g.edges)
        for i, j in enumerate(edge_order, start=1):
            full[j] = v[i]
        if not A.annihilates(full):
            raise InternalConsistencyError(
                f"Closed-form vector {tuple(v[1:])} is not in the kernel"
            )
        return tuple(full)

    path_range = range(1, k + 1)
    m_range = range(k + 1, m + 1)
    n_range = range(m + 1, total + 1)
    d = (
        _gcd([a[i] for i in m_range]),
        _gcd([b[i] for i in n_range]),
        _gcd([a[i] for i in path_range]),
        _gcd([c[i] for i in n_range]),
        _gcd([b[i] for i in path_range]),
        _gcd([c[i] for i in m_range]),
    )
    E = (
        _pairs(d[0], d[1], [a[j] for j in path_range], [b[j] for j in path_range]),
        _pairs(d[2], d[3], [a[j] for j in m_range], [c[j] for j in m_range]),
        _pairs(d[4], d[5], [b[j] for j in n_range], [c[j] for j in n_range]),
    )
    minimal_E = tuple(_minimal_pairs(pairs) for pairs in E)

    c_even = [(-1) ** k * x for x in c]
    c_odd = [-x for x in c_even]
    S = (
        [_combine(p, d[0], a, q, d[1], b) for p, q in minimal_E[0]],
        [_combine(p, d[2], a, q, d[3], c_even) for p, q in minimal_E[1]],
        [_combine(p, d[4], b, q, d[5], c_odd) for p, q in minimal_E[2]],
    )

    a_g, b_g, c_g = to_graph(a), to_graph(b), to_graph(c)
    S_g = tuple(tuple(to_graph(v) for v in vectors) for vectors in S)
    basis = BasisSet.build(
        "graver", [a_g, b_g, c_g] + [v for vectors in S_g for v in vectors], A
    )
    logger.info(
        "Shared-path closed form: k=%d m=%d n=%d, d=%s, %d basis elements",
        k,
        m,
        n,
        d,
        len(basis),
    )
    return SharedPathGraverReport(
        k=k,
        m=m,
        n=n,
        edge_order=edge_order,
        minors_C_m=tuple(minors_m),
        minors_C_n=tuple(minors_n),
        minors_C=tuple(minors_c),
        d_a=d_a,
        d_b=d_b,
        d_c=d_c,
        a=a_g,
        b=b_g,
        c=c_g,
        d=d,
        E=(tuple(E[0]), tuple(E[1]), tuple(E[2])),
        minimal_E=(tuple(minimal_E[0]), tuple(minimal_E[1]), tuple(minimal_E[2])),
        S=(S_g[0], S_g[1], S_g[2]),
        basis=basis,
    )

