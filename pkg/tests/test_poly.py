"""Univariate and bivariate polynomial arithmetic."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from edge_transition.algebra import R2, AlgNum, BivarPoly, Poly1, exact_divide_x_minus_y
from edge_transition.errors import DivisionRemainderError, FieldExtensionError, ParameterError

X = BivarPoly.x()
Y = BivarPoly.y()


def test_poly1_basics():
    p = Poly1([1, 0, Fraction(1, 2), 0, 0])
    assert p.degree == 2
    assert p[2] == Fraction(1, 2)
    assert p[7] == 0
    assert Poly1().degree == -1
    assert Poly1.monomial(3, 2) == Poly1([0, 0, 0, 2])


def test_poly1_arithmetic():
    p = Poly1([1, 1])
    assert p * p == Poly1([1, 2, 1])
    assert p**3 == Poly1([1, 3, 3, 1])
    assert (p * p - p) == Poly1([0, 1, 1])
    assert Poly1([2, 4]) / 2 == Poly1([1, 2])
    assert Poly1([2, 2]) / 2 == p
    assert (p**3).derivative() == 3 * p * p


def test_poly1_rejects_mixed_variables():
    with pytest.raises(ParameterError):
        Poly1([1, 1], "x") + Poly1([0, 1], "y")


def test_poly1_evaluate():
    p = Poly1([Fraction(1, 2), -3, 1])
    assert p.evaluate(2.0) == pytest.approx(-1.5)
    with mpmath.workprec(100):
        value = p.evaluate(mpmath.mpf(3))
        assert isinstance(value, mpmath.mpf)
        assert value == mpmath.mpf("0.5")
    assert Poly1([0, R2]).evaluate(1.0) == pytest.approx(2**0.5)


def test_bivariate_products_and_swap():
    p = (X + Y) ** 2
    assert p == BivarPoly({(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert p.is_symmetric()
    q = X * X * Y - 3 * Y
    assert q.swap() == Y * Y * X - 3 * X
    assert not q.is_symmetric()
    assert q.total_degree == 3
    assert BivarPoly().total_degree == -1


def test_sorted_terms_are_graded_with_x_powers_first():
    p = Y**2 + X * Y + X**2 + 5
    keys = [key for key, _ in p.sorted_terms()]
    assert keys == [(0, 0), (2, 0), (1, 1), (0, 2)]


def test_on_diagonal_and_homogeneous_components():
    p = X**2 - Y**2 + 3 * X + 1
    assert p.on_diagonal() == Poly1([1, 3])
    parts = p.homogeneous_components()
    assert parts[0] == 1
    assert parts[1] == 3 * X
    assert parts[2] == X**2 - Y**2


def test_content():
    p = BivarPoly({(1, 0): Fraction(3, 10), (0, 0): Fraction(1, 5)})
    assert p.content() == Fraction(1, 10)
    assert BivarPoly().content() == 1


def test_rationality():
    assert (X + Fraction(1, 3)).to_rational().is_rational()
    with pytest.raises(FieldExtensionError):
        (X * R2).to_rational()
    # coefficients collapsing back to Q are stored as Fractions
    assert (X * R2 * R2).is_rational()


def test_records_round_trip_for_algebraic_coefficients():
    p = X * AlgNum(c=Fraction(1, 25)) + Y**2 * Fraction(-3, 7)
    rebuilt = BivarPoly.from_records(p.to_coeff_records())
    assert rebuilt == p
    rational = X * Fraction(3, 10) - 1
    assert rational.to_records() == [
        {"dx": 0, "dy": 0, "num": -1, "den": 1},
        {"dx": 1, "dy": 0, "num": 3, "den": 10},
    ]


def test_evaluate_bivariate():
    p = X**2 * Y - Fraction(1, 2) * Y
    assert p.evaluate(2.0, 3.0) == pytest.approx(10.5)
    with mpmath.workprec(80):
        assert p.evaluate(mpmath.mpf(2), mpmath.mpf(3)) == mpmath.mpf("10.5")


def test_exact_division_by_x_minus_y():
    q = X**2 + 3 * X * Y - Fraction(1, 4) * Y + 7
    p = (X - Y) * q
    assert exact_divide_x_minus_y(p) == q
    assert exact_divide_x_minus_y(X**3 - Y**3) == X**2 + X * Y + Y**2
    assert exact_divide_x_minus_y(BivarPoly()).is_zero()


def test_division_reports_the_remainder():
    with pytest.raises(DivisionRemainderError) as info:
        exact_divide_x_minus_y(X + Y, j=3, component="01")
    assert info.value.remainder == BivarPoly({(0, 1): 2})
    assert "j=3" in str(info.value)
    assert "component=01" in str(info.value)
