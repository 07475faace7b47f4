"""Seeded randomized checks of the structural facts the engine relies on."""

import random
from collections import Counter
from itertools import combinations

import networkx as nx
import pytest

from helpers import (
    cycle_graph,
    load_fixture,
    random_graph,
    random_theta,
    sample,
    shared_path_graph,
    square_and_hexagon,
)
from wog_toric.server.algebra.analysis import ToricAnalysis
from wog_toric.server.algebra.binomials import (
    BasisSet,
    TermOrder,
    a_degree,
    binomial_from_vector,
    conformal_leq,
    fiber,
)
from wog_toric.server.algebra.graph import (
    cycle_from_edges,
    cycle_sources_sinks,
    detect_D1,
    detect_D2,
    enumerate_cycles,
    incidence_matrix,
    is_balanced,
    outer_cycle,
    shared_path_decomposition,
)
from wog_toric.server.algebra.graver import (
    balanced_cycle_generator,
    circuits,
    graver_basis,
    graver_oracle,
    shared_path_two_balanced_graver,
)
from wog_toric.server.algebra.groebner import ideal_membership, universal_gb
from wog_toric.server.algebra.linalg import integer_kernel_basis, kernel_dimension
from wog_toric.server.algebra.robustness import (
    PROPERTIES,
    classify,
    is_strongly_robust,
)


TRIALS = 200


def balanced_cycle(rng, forward, max_weight=9):
    """Even cycle with the given directions and weights making it balanced.

    A vertex passed in the direction of the edges contributes its weight to
    one side of the determinant, one passed against them to the other side;
    sources and sinks contribute to both. Pairing equal weights across the
    two kinds keeps the sides equal.
    """
    n = len(forward)
    along, against, ends = [], [], []
    for i in range(n):
        before, after = forward[i - 1], forward[i]
        if before and after:
            along.append(i)
        elif not before and not after:
            against.append(i)
        else:
            ends.append(i)
    weights = [1] * n
    for i in ends:
        weights[i] = rng.randint(1, max_weight)
    rng.shuffle(along)
    rng.shuffle(against)
    for i, j in zip(along, against):
        weights[i] = weights[j] = rng.randint(1, max_weight)
    return cycle_graph(weights, forward)


def single_source_forward(rng, n):
    """Directions with the only source at v1 and the only sink at a random vertex."""
    sink = rng.randint(1, n - 1)
    return [i < sink for i in range(n)]


def only_cycle(g):
    (c,) = enumerate_cycles(g)
    return c


class TestBalancedCycles:
    def test_construction_is_balanced(self):
        rng = random.Random(1)
        for _ in range(TRIALS):
            n = rng.choice([4, 6, 8, 10, 12])
            forward = [rng.random() < 0.5 for _ in range(n)]
            assert is_balanced(only_cycle(balanced_cycle(rng, forward)))

    def test_minor_generator_matches_kernel(self):
        rng = random.Random(2)
        for _ in range(500):
            n = rng.choice([4, 6, 8, 10, 12])
            forward = [rng.random() < 0.5 for _ in range(n)]
            g = balanced_cycle(rng, forward)
            A = incidence_matrix(g)
            generator = balanced_cycle_generator(only_cycle(g))
            (kernel,) = integer_kernel_basis(A)
            assert A.annihilates(generator)
            assert binomial_from_vector(generator) == binomial_from_vector(kernel)

    def test_single_source_has_unit_source_entries(self):
        rng = random.Random(3)
        for _ in range(TRIALS):
            n = rng.choice([4, 6, 8, 10, 12])
            g = balanced_cycle(rng, single_source_forward(rng, n))
            generator = balanced_cycle_generator(only_cycle(g))
            assert abs(generator[0]) == 1
            assert abs(generator[n - 1]) == 1

    def test_odd_cycles_are_unbalanced(self):
        rng = random.Random(4)
        for _ in range(TRIALS):
            n = rng.choice([3, 5, 7, 9])
            forward = [rng.random() < 0.5 for _ in range(n)]
            weights = [rng.randint(1, 9) for _ in range(n)]
            g = cycle_graph(weights, forward)
            assert not is_balanced(only_cycle(g))
            assert kernel_dimension(incidence_matrix(g)) == 0


class TestSharedPaths:
    def test_outer_cycle_of_balanced_cycles_is_balanced(self):
        rng = random.Random(5)

        def both_balanced(g):
            d = shared_path_decomposition(g)
            return d is not None and all(d.balanced)

        for _ in range(TRIALS):
            g = sample(rng, lambda r: random_theta(r, max_weight=2), both_balanced)
            assert g is not None
            first, second = shared_path_decomposition(g).cycles
            assert is_balanced(outer_cycle(first, second))

    def test_kernel_dimension(self):
        rng = random.Random(6)
        checked = 0
        for _ in range(20 * TRIALS):
            count = rng.randint(3, 5)
            lengths = sorted(rng.randint(1, 4) for _ in range(count))
            if lengths[1] == 1:
                continue
            g = shared_path_graph(rng, lengths, max_weight=2)
            d = shared_path_decomposition(g)
            dimension = kernel_dimension(incidence_matrix(g))
            if d.unbalanced_count == 0:
                assert dimension == d.n
            elif d.unbalanced_count == 1:
                assert dimension == d.n - 1
            else:
                continue
            checked += 1
            if checked == TRIALS:
                break
        assert checked == TRIALS


class TestOrders:
    def test_conformal_order_is_partial(self):
        rng = random.Random(7)
        for _ in range(TRIALS):
            u, v, w = (
                tuple(rng.randint(-2, 2) for _ in range(4)) for _ in range(3)
            )
            assert conformal_leq(u, u)
            if conformal_leq(u, v) and conformal_leq(v, u):
                assert u == v
            if conformal_leq(u, v) and conformal_leq(v, w):
                assert conformal_leq(u, w)


class TestGraverOracle:
    @pytest.mark.parametrize(
        "name",
        ["fig3", "fig4", "fig5", "fig6", pytest.param("fig7", marks=pytest.mark.slow)],
    )
    def test_fixtures(self, name):
        A = incidence_matrix(load_fixture(name))
        gr = graver_basis(A)
        bound = max(abs(x) for b in gr for x in b.exponents)
        assert gr.same_elements(graver_oracle(A, bound))

    @pytest.mark.slow
    def test_random_thetas(self):
        rng = random.Random(8)

        def small_entries(g):
            gr = graver_basis(incidence_matrix(g))
            return max(abs(x) for b in gr for x in b.exponents) <= 60

        for _ in range(50):
            g = sample(rng, random_theta, small_entries)
            assert g is not None
            A = incidence_matrix(g)
            gr = graver_basis(A)
            bound = max(abs(x) for b in gr for x in b.exponents)
            assert gr.same_elements(graver_oracle(A, bound))


def generates(subset, gr):
    return all(ideal_membership(b, subset) for b in gr)


class TestMarkovOracle:
    @pytest.mark.slow
    def test_union_and_intersection_of_minimal_generating_sets(self):
        rng = random.Random(9)

        def few_graver_elements(g):
            return len(graver_basis(incidence_matrix(g))) <= 6

        for _ in range(20):
            g = sample(
                rng, lambda r: random_theta(r, max_weight=3), few_graver_elements
            )
            assert g is not None
            toric = ToricAnalysis.from_graph(g)
            gr = list(toric.graver())
            generating = [
                set(subset)
                for size in range(1, len(gr) + 1)
                for subset in combinations(gr, size)
                if generates(subset, gr)
            ]
            minimal = [s for s in generating if not any(t < s for t in generating)]
            union = BasisSet.build("markov", set().union(*minimal), toric.A)
            common = BasisSet.build(
                "indispensable", set.intersection(*minimal), toric.A
            )
            assert toric.markov().same_elements(union)
            assert toric.indispensables().same_elements(common)


class TestBasisInclusions:
    @pytest.mark.slow
    def test_random_thetas(self):
        rng = random.Random(10)
        for trial in range(TRIALS):
            g = random_theta(rng, max_edges=8, max_weight=3)
            toric = ToricAnalysis.from_graph(g)
            A = toric.A
            gr = toric.graver()

            report = universal_gb(A, samples=2, seed=trial, graver=gr)
            assert toric.circuits().issubset(report.lower)
            assert report.lower.issubset(report.upper)
            assert report.upper.same_elements(gr)

            assert toric.indispensables().issubset(toric.markov())
            assert toric.markov().issubset(gr)

            # shared path on top of the degree-lex order
            d = toric.decomposition()
            top = [g.edges[j].id for j in d.path.edges]
            gb = toric.groebner(TermOrder.from_labels(top, g.edge_labels))
            assert toric.indispensables().issubset(gb)
            assert gb.issubset(gr)
            if toric.indispensables().same_elements(gr):
                assert gb.same_elements(gr)


class TestObstructions:
    @pytest.mark.slow
    def test_d1_rules_out_every_property(self):
        rng = random.Random(11)

        def has_d1(g):
            d = shared_path_decomposition(g)
            return d.unit_path and all(d.balanced)

        def make(r):
            lengths = sorted(r.randint(2, 4) for _ in range(2))
            return shared_path_graph(r, [1] + lengths, max_weight=2)

        for _ in range(TRIALS):
            g = sample(rng, make, has_d1)
            assert g is not None
            assert detect_D1(g)
            report = classify(g, samples=2)
            assert all(getattr(report, name) is False for name in PROPERTIES)


def brute_force_fiber(A, degree):
    """Every u in N^m with A·u = degree, in lexicographic order."""
    columns = A.columns()
    found = []

    def descend(j, residual, point):
        if j == len(columns):
            if not any(residual):
                found.append(tuple(point))
            return
        x = 0
        while all(r >= 0 for r in residual):
            descend(j + 1, residual, point + [x])
            residual = [r - c for r, c in zip(residual, columns[j])]
            x += 1

    descend(0, list(degree), [])
    return found


class TestFibers:
    def test_matches_brute_force(self):
        rng = random.Random(12)
        for trial in range(TRIALS // 2):
            if trial % 2:
                g = random_theta(rng, max_edges=8, max_weight=3)
            else:
                g = random_graph(rng, max_vertices=6, max_extra_edges=2)
            A = incidence_matrix(g)
            witness = [rng.randint(0, 2) for _ in range(A.ncols)]
            expected = brute_force_fiber(A, a_degree(witness, A))
            assert tuple(witness) in expected
            assert list(fiber(A, witness).members) == expected


def cycle_balance(g):
    """Edge sets of all cycles of g, found by checking every edge subset."""
    balance = {}
    for size in range(3, len(g.edges) + 1):
        for subset in combinations(range(len(g.edges)), size):
            ends = Counter(v for j in subset for v in g.edges[j][1:])
            if any(count != 2 for count in ends.values()):
                continue
            underlying = nx.Graph(g.edges[j][1:] for j in subset)
            if not nx.is_connected(underlying):
                continue
            balance[frozenset(subset)] = is_balanced(cycle_from_edges(g, subset))
    return balance


def brute_force_obstructions(g):
    balance = cycle_balance(g)
    balanced = [p for p, b in balance.items() if b]
    unbalanced = [p for p, b in balance.items() if not b]
    d1 = {
        frozenset({p, q})
        for p, q in combinations(balanced, 2)
        if len(p & q) == 1 and (p ^ q) in balance
    }
    d2 = {
        (b, frozenset({p, q}))
        for p, q in combinations(unbalanced, 2)
        if len(p & q) == 1 and balance.get(p ^ q) is False
        for b in balanced
        if b & p == p & q and b & q == p & q
    }
    return d1, d2


def detected_obstructions(g):
    d1 = [frozenset({o.first.edge_set, o.second.edge_set}) for o in detect_D1(g)]
    d2 = [
        (
            o.balanced.edge_set,
            frozenset({o.first_unbalanced.edge_set, o.second_unbalanced.edge_set}),
        )
        for o in detect_D2(g)
    ]
    assert len(d1) == len(set(d1))
    assert len(d2) == len(set(d2))
    return set(d1), set(d2)


def two_unbalanced_at_most(g):
    d = shared_path_decomposition(g)
    return d is not None and d.unbalanced_count <= 2


def small_theta(r):
    return random_theta(r, max_edges=8, max_weight=2)


def four_paths(r):
    lengths = sorted(r.randint(1, 3) for _ in range(4))
    lengths[1:] = [max(x, 2) for x in lengths[1:]]
    return shared_path_graph(r, lengths, max_weight=2)


class TestObstructionSearch:
    def test_square_and_hexagon(self):
        g = square_and_hexagon()
        assert brute_force_obstructions(g) == (set(), set())
        assert detected_obstructions(g) == (set(), set())

    def test_fixtures(self, theta_weight_one, d2_triple, fig5, fig7):
        d1, _ = detected_obstructions(theta_weight_one)
        _, d2 = detected_obstructions(d2_triple)
        assert len(d1) == 1
        assert len(d2) == 1
        for g in (theta_weight_one, d2_triple, fig5, fig7):
            assert detected_obstructions(g) == brute_force_obstructions(g)

    def test_matches_brute_force(self):
        rng = random.Random(13)
        for _ in range(TRIALS):
            g = random_graph(rng)
            expected = brute_force_obstructions(g)
            assert detected_obstructions(g) == expected

    @pytest.mark.slow
    def test_structural_verdicts_agree_with_computed_ones(self):
        rng = random.Random(14)
        for trial in range(30):
            make = four_paths if trial % 2 else small_theta
            g = sample(rng, make, two_unbalanced_at_most)
            assert g is not None
            report = classify(g, samples=2)
            assert report.structural_agreement is True

    @pytest.mark.slow
    def test_no_obstruction_means_strongly_robust(self):
        rng = random.Random(15)

        def clean(g):
            d = shared_path_decomposition(g)
            return (
                d.unbalanced_count == 2 and not detect_D1(g) and not detect_D2(g)
            )

        for _ in range(20):
            g = sample(rng, four_paths, clean)
            assert g is not None
            toric = ToricAnalysis.from_graph(g)
            assert is_strongly_robust(toric.A, toric).holds is True


def sources_at_path_ends(g):
    d = shared_path_decomposition(g)
    if d is None or d.n != 2 or not all(d.balanced):
        return False
    ends = {d.path.vertices[0], d.path.vertices[-1]}
    cycles = list(d.cycles) + [outer_cycle(*d.cycles)]
    return all(set(cycle_sources_sinks(c)[0]) <= ends for c in cycles)


class TestTwoBalancedClosedForm:
    @pytest.mark.slow
    def test_matches_graver_basis(self):
        rng = random.Random(16)

        def two_balanced(g):
            d = shared_path_decomposition(g)
            return d.n == 2 and all(d.balanced)

        for _ in range(50):
            g = sample(
                rng, lambda r: random_theta(r, max_edges=10, max_weight=2), two_balanced
            )
            assert g is not None
            report = shared_path_two_balanced_graver(shared_path_decomposition(g))
            assert report.basis.same_elements(graver_basis(incidence_matrix(g)))

    @pytest.mark.slow
    def test_sources_at_path_ends_give_circuits(self):
        rng = random.Random(17)
        for _ in range(30):
            g = sample(
                rng,
                lambda r: random_theta(r, max_edges=10, max_weight=2),
                sources_at_path_ends,
            )
            assert g is not None
            A = incidence_matrix(g)
            report = shared_path_two_balanced_graver(shared_path_decomposition(g))
            assert report.d == (1,) * 6
            assert report.E == ((), (), ())
            assert len(report.basis) == 3
            assert report.basis.same_elements(circuits(A))
            assert report.basis.same_elements(graver_basis(A))
