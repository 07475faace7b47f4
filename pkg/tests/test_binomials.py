"""Binomials, canonical text, basis sets, fibers and term orders."""

import pytest

from helpers import FIG5_GRAVER, basis_of
from wog_toric.server.algebra.binomials import (
    BasisSet,
    Binomial,
    TermOrder,
    a_degree,
    binomial_from_vector,
    conformal_leq,
    coordinate_bounds,
    fiber,
    format_monomial,
    matrix_hash,
    normal_form,
    parse_binomial,
    parse_monomial,
)
from wog_toric.server.algebra.errors import (
    MatrixShapeError,
    ResourceCapExceeded,
    ZeroVectorError,
)
from wog_toric.server.algebra.graph import incidence_matrix
from wog_toric.server.algebra.linalg import IntegerMatrix
from wog_toric.server.algebra.settings import ResourceCaps

LABELS = ("e1", "e2", "e3", "e4", "e5", "e6", "e7")
FIG3_GENERATOR = (-2, 4, 0, 1, -1, 2, -4)


class TestBinomial:
    def test_sign_normalized(self):
        b = binomial_from_vector(FIG3_GENERATOR)
        assert b.exponents == (2, -4, 0, -1, 1, -2, 4)
        assert b == binomial_from_vector([-x for x in FIG3_GENERATOR])

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            Binomial((0, 0, 0))

    def test_monomials_and_support(self):
        b = binomial_from_vector((1, -2, 0))
        assert b.positive == (1, 0, 0)
        assert b.negative == (0, 2, 0)
        assert b.support == frozenset({0, 1})
        assert b.norm == 3

    def test_to_string(self):
        b = binomial_from_vector(FIG3_GENERATOR)
        assert b.to_string(LABELS) == "e1^2*e5*e7^4 - e2^4*e4*e6^2"

    def test_format_constant_monomial(self):
        assert format_monomial((0, 0), ("x", "y")) == "1"


class TestParsing:
    def test_printed_notation(self):
        b = parse_binomial("e4 e2^4 e6^2 − e1^2 e5 e7^4", LABELS)
        assert b == binomial_from_vector(FIG3_GENERATOR)

    def test_star_notation(self):
        b = parse_binomial("e4*e2^4*e6^2 - e1^2*e5*e7^4", LABELS)
        assert b == binomial_from_vector(FIG3_GENERATOR)

    def test_canonical_text_parses_back(self):
        b = binomial_from_vector(FIG3_GENERATOR)
        assert parse_binomial(b.to_string(LABELS), LABELS) == b

    def test_unknown_variable(self):
        with pytest.raises(ValueError):
            parse_monomial("e9^2", LABELS)

    def test_missing_minus(self):
        with pytest.raises(ValueError):
            parse_binomial("e1 e2", LABELS)


class TestBasisSet:
    def test_canonical_order_and_duplicates(self, fig5):
        basis = basis_of(fig5, list(reversed(FIG5_GRAVER)) + FIG5_GRAVER)
        assert len(basis) == 8
        keys = [b.sort_key() for b in basis]
        assert keys == sorted(keys)

    def test_negated_input_is_same_set(self, fig5):
        first = basis_of(fig5, FIG5_GRAVER)
        second = basis_of(fig5, [[-x for x in v] for v in FIG5_GRAVER])
        assert first.same_elements(second)
        assert first.strings() == second.strings()

    def test_wrong_width(self, fig5):
        with pytest.raises(MatrixShapeError):
            BasisSet.build("input", [(1, -1)], incidence_matrix(fig5))

    def test_export(self, fig5):
        basis = basis_of(fig5, FIG5_GRAVER)
        exported = basis.export()
        assert exported["kind"] == "input"
        assert exported["matrix_hash"] == matrix_hash(incidence_matrix(fig5))
        assert len(exported["elements"]) == 8

    def test_hash_depends_on_entries(self):
        A = IntegerMatrix.from_rows([[1, 2]])
        B = IntegerMatrix.from_rows([[2, 1]])
        assert matrix_hash(A) != matrix_hash(B)
        assert matrix_hash(A) == matrix_hash(IntegerMatrix.from_rows([[1, 2]]))


class TestConformalOrder:
    def test_sign_compatible(self):
        assert conformal_leq((1, 0, -1), (2, 3, -1))
        assert not conformal_leq((1, 0, -1), (2, 3, 1))
        assert not conformal_leq((2, 0, 0), (1, 0, 0))

    def test_fig5_graver_is_an_antichain(self):
        for u in FIG5_GRAVER:
            for v in FIG5_GRAVER:
                if u != v:
                    assert not conformal_leq(u, v)


class TestFiber:
    def test_degree(self, fig3):
        A = incidence_matrix(fig3)
        b = binomial_from_vector(FIG3_GENERATOR)
        assert a_degree(b.positive, A) == a_degree(b.negative, A)

    def test_negative_exponent(self, fig3):
        with pytest.raises(ValueError):
            a_degree((-1, 0, 0, 0, 0, 0, 0), incidence_matrix(fig3))

    def test_principal_fiber_has_two_members(self, fig3):
        A = incidence_matrix(fig3)
        b = binomial_from_vector(FIG3_GENERATOR)
        f = fiber(A, b.positive)
        assert set(f.members) == {b.positive, b.negative}

    def test_fiber_of_a_single_variable(self, fig3):
        A = incidence_matrix(fig3)
        f = fiber(A, (1, 0, 0, 0, 0, 0, 0))
        assert f.members == ((1, 0, 0, 0, 0, 0, 0),)

    def test_coordinate_bounds(self):
        A = IntegerMatrix.from_rows([[1, 2], [3, 1]])
        assert coordinate_bounds(A, (4, 6)) == [2, 2]

    def test_not_positively_graded(self):
        A = IntegerMatrix.from_rows([[1, -1]])
        with pytest.raises(MatrixShapeError):
            coordinate_bounds(A, (1,))

    def test_fiber_cap(self):
        A = IntegerMatrix.from_rows([[1, 1, 1]])
        with pytest.raises(ResourceCapExceeded) as info:
            fiber(A, (10, 0, 0), ResourceCaps(fiber_size=5))
        assert info.value.resource == "fiber_size"


class TestTermOrder:
    def test_degree_first(self):
        order = TermOrder.default(3)
        assert order.key((0, 0, 2)) > order.key((1, 0, 0))

    def test_priority_breaks_ties(self):
        order = TermOrder.from_labels(["e3"], ["e1", "e2", "e3"])
        assert order.priority == (2, 0, 1)
        assert order.key((0, 0, 1)) > order.key((1, 0, 0))

    def test_orient(self):
        b = binomial_from_vector((1, -2, 0))
        lead, trail = TermOrder.default(3).orient(b)
        assert lead == (0, 2, 0)
        assert trail == (1, 0, 0)

    def test_invalid_priority(self):
        with pytest.raises(ValueError):
            TermOrder((0, 0, 1))
        with pytest.raises(ValueError):
            TermOrder.from_labels(["e9"], ["e1", "e2"])
        with pytest.raises(ValueError):
            TermOrder.from_labels(["e1", "e1"], ["e1", "e2"])

    def test_normal_form(self):
        # x1 - x2 reduces x1^2 to x2^2 under x1 > x2
        basis = [binomial_from_vector((1, -1))]
        order = TermOrder.default(2)
        assert normal_form((2, 0), basis, order) == (0, 2)
        assert normal_form(binomial_from_vector((2, -2)), basis, order) is None
