"""
Tests for quasisymmetric arithmetic and specialization
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from megagreedoids.core import MalformedInputError
from megagreedoids.qsym import (
    QsymElement,
    count_specialize,
    counting_binomial,
    counting_polynomial,
    evaluate,
    multiply,
    quasi_shuffle,
    render,
    render_polynomial,
    specialize_poly,
    subset_to_composition,
    to_basis,
)


@st.composite
def qsym_elements(draw, max_degree=4, max_terms=3):
    basis = draw(st.sampled_from(["F", "M"]))
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        degree = draw(st.integers(0, max_degree))
        subset = draw(st.sets(st.integers(1, max(degree - 1, 1)), max_size=max(degree - 1, 0)))
        subset = tuple(sorted(i for i in subset if i < degree))
        terms[(subset, degree)] = draw(st.integers(-3, 3))
    return QsymElement(basis, terms)


FIGURE_CHI = QsymElement("F", {((1, 2, 3), 4): 6, ((1, 3), 4): 2})


class TestBases:
    def test_fundamental_in_monomials(self):
        assert to_basis(QsymElement.F([], 2), "M") == QsymElement("M", {((), 2): 1, ((1,), 2): 1})
        assert to_basis(QsymElement.F([1], 2), "M").terms == {((1,), 2): 1}

    def test_cross_basis_equality(self):
        assert QsymElement.F([], 2) == QsymElement("M", {((), 2): 1, ((1,), 2): 1})
        assert hash(QsymElement.F([], 2)) == hash(to_basis(QsymElement.F([], 2), "M"))

    @given(qsym_elements())
    def test_conversion_is_invertible(self, q):
        assert to_basis(to_basis(q, "M"), "F").terms == to_basis(q, "F").terms

    def test_zero_coefficients_vanish(self):
        q = QsymElement.F([1], 3) - QsymElement.F([1], 3)
        assert q.is_zero()
        assert render(q) == "0"

    @pytest.mark.parametrize("subset, degree", [([0], 2), ([2], 2), ([1], 0)])
    def test_bad_descent_sets(self, subset, degree):
        with pytest.raises(MalformedInputError):
            QsymElement.F(subset, degree)

    def test_bad_basis(self):
        with pytest.raises(MalformedInputError):
            QsymElement("P", {})


class TestProduct:
    def test_quasi_shuffle_of_singletons(self):
        assert dict(quasi_shuffle((1,), (1,))) == {(1, 1): 2, (2,): 1}

    def test_monomial_square(self):
        square = QsymElement.M([], 1) * QsymElement.M([], 1)
        assert square.terms == {((1,), 2): 2, ((), 2): 1}

    def test_fundamental_square(self):
        square = QsymElement.F([], 1) * QsymElement.F([], 1)
        assert square == QsymElement.F([], 2) + QsymElement.F([1], 2)
        assert square.basis == "F"

    def test_unit(self):
        assert multiply(QsymElement.one(), FIGURE_CHI) == FIGURE_CHI

    def test_scalars(self):
        assert (3 * QsymElement.F([1], 2)).coefficient([1], 2) == 3
        assert (QsymElement.F([1], 2) * Fraction(1, 2)).coefficient([1], 2) == Fraction(1, 2)

    @given(qsym_elements(), qsym_elements())
    def test_commutative(self, a, b):
        assert a * b == b * a

    @given(qsym_elements(max_degree=3, max_terms=2), qsym_elements(max_degree=3, max_terms=2),
           qsym_elements(max_degree=2, max_terms=2))
    def test_associative_and_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


class TestSpecialization:
    def test_composition(self):
        assert subset_to_composition((1, 3), 4) == (1, 2, 1)
        assert subset_to_composition((), 0) == ()

    @pytest.mark.parametrize("q, n, expected", [
        (QsymElement.F([], 3), 2, 4),
        (QsymElement.F([1, 2], 3), 4, 4),
        (QsymElement.M([1], 2), 3, 3),
        (QsymElement.one(), 5, 1),
    ])
    def test_known_counts(self, q, n, expected):
        assert count_specialize(q, n) == expected

    @pytest.mark.parametrize("n, expected", [(1, 0), (2, 0), (3, 2), (4, 16)])
    def test_figure_counts(self, n, expected):
        assert count_specialize(FIGURE_CHI, n) == expected

    def test_degree_and_render(self):
        poly = counting_binomial(0, 2)
        assert poly.degree() == 2
        assert render_polynomial(poly) == "1/2*n^2 - 1/2*n"
        assert render_polynomial(counting_polynomial()) == "0"
        assert render_polynomial(counting_polynomial([3, 0, -1])) == "-n^2 + 3"

    def test_binomial_at_rational_points(self):
        assert evaluate(counting_binomial(0, 2), -1) == 1
        assert evaluate(counting_binomial(3, 2), -1) == 1
        assert evaluate(counting_binomial(0, 2), Fraction(1, 2)) == Fraction(-1, 8)
        assert isinstance(evaluate(counting_binomial(0, 0), 7), Fraction)

    @given(qsym_elements(), qsym_elements(), st.integers(0, 6))
    def test_specialization_is_multiplicative(self, a, b, n):
        assert count_specialize(a * b, n) == count_specialize(a, n) * count_specialize(b, n)

    @given(qsym_elements())
    def test_polynomial_matches_pointwise(self, q):
        poly = specialize_poly(q)
        assert poly == specialize_poly(to_basis(q, "M"))
        for n in range(5):
            assert evaluate(poly, n) == count_specialize(q, n)


class TestRender:
    def test_figure(self):
        assert render(FIGURE_CHI) == "6*F[{1,2,3};4] + 2*F[{1,3};4]"

    def test_mixed_degrees(self):
        q = QsymElement.M([], 1) + QsymElement("M", {((), 0): Fraction(-1, 2)})
        assert str(q) == "-1/2*M[{};0] + 1*M[{};1]"
