"""Buchberger's algorithm on binomials, reduced Gröbner bases and universal bounds."""

import heapq
import logging
import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from .binomials import (
    BasisSet,
    Binomial,
    Monomial,
    OrientedBinomial,
    TermOrder,
    binomial_from_vector,
    divides,
    reduce_monomial,
)
from .errors import InternalConsistencyError, ResourceCapExceeded
from .graph import WeightedOrientedGraph, shared_path_decomposition
from .graver import circuits, graver_basis
from .linalg import IntegerMatrix
from .settings import ResourceCaps, get_caps

logger = logging.getLogger(__name__)

__all__ = [
    "TermOrder",
    "UniversalGBReport",
    "buchberger",
    "groebner_basis",
    "ideal_membership",
    "is_reduced_gb",
    "reduced_groebner_basis_from_graver",
    "universal_gb",
]

Pair = Tuple[int, int]


def _lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(u, v))


def _coprime(u: Monomial, v: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(u, v))


def _orient(lead: Monomial, trail: Monomial, order: TermOrder) -> OrientedBinomial:
    if order.key(lead) > order.key(trail):
        return lead, trail
    return trail, lead


def spoly(f: OrientedBinomial, g: OrientedBinomial) -> Tuple[Monomial, Monomial]:
    """The two monomials of the S-polynomial of two binomials."""
    lcm = _lcm(f[0], g[0])
    first = tuple(m - a + b for m, a, b in zip(lcm, f[0], f[1]))
    second = tuple(m - c + d for m, c, d in zip(lcm, g[0], g[1]))
    return first, second


def select(queue: List[Tuple[object, Monomial, Pair]]) -> Pair:
    """Pop the pair with the smallest lcm (normal strategy)."""
    _, _, pair = heapq.heappop(queue)
    return pair


def update(
    G: List[OrientedBinomial],
    queue: List[Tuple[object, Monomial, Pair]],
    f: OrientedBinomial,
    order: TermOrder,
) -> None:
    """Add f to G and queue its pairs, skipping pairs with coprime leading terms."""
    for i, g in enumerate(G):
        if _coprime(g[0], f[0]):
            continue
        lcm = _lcm(g[0], f[0])
        heapq.heappush(queue, (order.key(lcm), lcm, (i, len(G))))
    G.append(f)


def minimalize(
    G: Sequence[OrientedBinomial], order: TermOrder
) -> List[OrientedBinomial]:
    """Drop elements whose leading term is divisible by another leading term."""
    Gmin: List[OrientedBinomial] = []
    for f in sorted(G, key=lambda h: (order.key(h[0]), order.key(h[1]))):
        if all(not divides(g[0], f[0]) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G: Sequence[OrientedBinomial]) -> List[OrientedBinomial]:
    """Reduce each trailing term by the other elements of a minimal basis."""
    Gred = []
    for i, (lead, trail) in enumerate(G):
        others = list(G[:i]) + list(G[i + 1 :])
        Gred.append((lead, reduce_monomial(trail, others)))
    return Gred


def groebner_basis(
    generators: Iterable[Union[Binomial, OrientedBinomial]],
    order: TermOrder,
    caps: Optional[ResourceCaps] = None,
) -> List[OrientedBinomial]:
    """Reduced Gröbner basis of the ideal generated by binomials.

    Elements are (leading, trailing) monomial pairs. Binomials whose monomials
    share variables are kept as they are, so the ideal is never saturated.
    """
    limit = get_caps(caps).groebner_size
    G: List[OrientedBinomial] = []
    queue: List[Tuple[object, Monomial, Pair]] = []
    for item in generators:
        if isinstance(item, Binomial):
            f = order.orient(item)
        else:
            f = _orient(item[0], item[1], order)
        if f[0] != f[1]:
            update(G, queue, f, order)

    reductions = 0
    while queue:
        i, j = select(queue)
        first, second = spoly(G[i], G[j])
        r1 = reduce_monomial(first, G)
        r2 = reduce_monomial(second, G)
        reductions += 1
        if r1 != r2:
            update(G, queue, _orient(r1, r2, order), order)
            if len(G) > limit:
                raise ResourceCapExceeded(
                    "groebner_size", limit, f"Buchberger after {reductions} pairs"
                )
    logger.debug(
        "Buchberger: %d elements before reduction, %d pairs", len(G), reductions
    )
    return interreduce(minimalize(G, order))


def buchberger(
    generators: Union[BasisSet, Iterable[Binomial]],
    order: TermOrder,
    matrix: Optional[IntegerMatrix] = None,
    caps: Optional[ResourceCaps] = None,
) -> BasisSet:
    """Reduced Gröbner basis of a toric ideal from binomial generators."""
    if matrix is None:
        if not isinstance(generators, BasisSet):
            raise ValueError("matrix is required when generators are not a BasisSet")
        matrix = generators.matrix
    reduced = groebner_basis(generators, order, caps)
    elements = []
    for lead, trail in reduced:
        if not _coprime(lead, trail):
            raise InternalConsistencyError(
                "Reduced Gröbner basis element is not a pure binomial: "
                f"{lead} - {trail}"
            )
        elements.append(binomial_from_vector([x - y for x, y in zip(lead, trail)]))
    result = BasisSet.build("groebner", elements, matrix)
    logger.info("Reduced Gröbner basis: %d elements", len(result))
    return result


def reduced_groebner_basis_from_graver(
    A: IntegerMatrix, order: TermOrder, caps: Optional[ResourceCaps] = None
) -> BasisSet:
    """Reduced Gröbner basis of I_A, seeded with the Graver basis."""
    return buchberger(graver_basis(A, caps), order, caps=caps)


def _leading_terms_reduced(G: Sequence[OrientedBinomial]) -> bool:
    for i, (lead, trail) in enumerate(G):
        for j, (other, _) in enumerate(G):
            if i != j and (divides(other, lead) or divides(other, trail)):
                return False
    return True


def _spairs_vanish(G: Sequence[OrientedBinomial]) -> bool:
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if _coprime(G[i][0], G[j][0]):
                continue
            first, second = spoly(G[i], G[j])
            if reduce_monomial(first, G) != reduce_monomial(second, G):
                return False
    return True


def is_reduced_gb(
    candidate: BasisSet,
    order: TermOrder,
    A: Optional[IntegerMatrix] = None,
    caps: Optional[ResourceCaps] = None,
) -> bool:
    """True iff candidate is the reduced Gröbner basis of I_A for ``order``."""
    matrix = A if A is not None else candidate.matrix
    if not all(matrix.annihilates(b.exponents) for b in candidate):
        return False
    G = [order.orient(b) for b in candidate]
    if not _leading_terms_reduced(G):
        logger.debug("Candidate has a term divisible by another leading term")
        return False
    if not _spairs_vanish(G):
        logger.debug("Candidate has a non-vanishing S-pair")
        return False
    expected = reduced_groebner_basis_from_graver(matrix, order, caps)
    return candidate.same_elements(expected)


def ideal_membership(
    f: Union[Binomial, Sequence[int]],
    generators: Union[BasisSet, Iterable[Binomial]],
    order: Optional[TermOrder] = None,
    caps: Optional[ResourceCaps] = None,
) -> bool:
    """True iff the binomial f lies in the ideal generated by ``generators``."""
    target = f if isinstance(f, Binomial) else binomial_from_vector(f)
    gens = list(generators)
    if not gens:
        return False
    chosen = order or TermOrder.default(len(target))
    G = groebner_basis(gens, chosen, caps)
    return reduce_monomial(target.positive, G) == reduce_monomial(target.negative, G)


@dataclass(frozen=True)
class UniversalGBReport:
    """Bounds lower ⊆ U_A ⊆ upper; ``certified`` is U_A when known exactly."""

    certified: Optional[BasisSet]
    lower: BasisSet
    upper: BasisSet
    reason: str


def random_orders(nvars: int, samples: int, seed: int) -> List[TermOrder]:
    """Default degree-lex order followed by seeded random priority permutations."""
    rng = random.Random(seed)
    orders = [TermOrder.default(nvars)]
    seen: Set[Tuple[int, ...]] = {orders[0].priority}
    for _ in range(samples):
        priority = list(range(nvars))
        rng.shuffle(priority)
        if tuple(priority) not in seen:
            seen.add(tuple(priority))
            orders.append(TermOrder(tuple(priority)))
    return orders


def universal_gb(
    A: IntegerMatrix,
    graph: Optional[WeightedOrientedGraph] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    caps: Optional[ResourceCaps] = None,
    graver: Optional[BasisSet] = None,
) -> UniversalGBReport:
    """Universal Gröbner basis, exact for shared-path graphs and bounded otherwise."""
    limits = get_caps(caps)
    upper = graver if graver is not None else graver_basis(A, limits)
    if graph is not None and shared_path_decomposition(graph) is not None:
        certified = BasisSet.build("universal", upper.elements, A)
        return UniversalGBReport(certified, certified, upper, "shared-path graph")

    witnessed = list(circuits(A, limits).elements)
    orders = random_orders(
        A.ncols,
        samples if samples is not None else limits.order_samples,
        seed if seed is not None else limits.order_seed,
    )
    for order in orders:
        witnessed.extend(buchberger(upper, order, caps=limits).elements)
    lower = BasisSet.build("universal", witnessed, A)
    if not lower.issubset(upper):
        raise InternalConsistencyError("Universal Gröbner lower bound escapes Graver")
    logger.info(
        "Universal Gröbner bounds: %d <= |U| <= %d over %d orders",
        len(lower),
        len(upper),
        len(orders),
    )
    if lower.same_elements(upper):
        return UniversalGBReport(lower, lower, upper, "lower bound reaches Graver")
    return UniversalGBReport(None, lower, upper, "sampled term orders")
