"""The E^-1 R^-1 R E sandwich and its (x - y) factorization."""

from __future__ import annotations

from fractions import Fraction

import pytest

from edge_transition.algebra import R2, AlgNum, BivarPoly
from edge_transition.errors import ParameterError
from edge_transition.expansion import BranchConvention, sandwich_series
from edge_transition.expansion.sandwich import (
    conjugation_factors,
    e_tilde_series,
    r_tilde_series,
    required_k,
)

F = Fraction
X = BivarPoly.x()


@pytest.mark.parametrize(("j_max", "k"), [(1, 1), (2, 1), (3, 2), (4, 3)])
def test_required_k(j_max, k):
    assert required_k(j_max) == k


def test_conjugation_factors():
    upper, lower = (c.to_algnum() for c in conjugation_factors())
    assert upper == AlgNum(d=F(-1))
    assert lower == AlgNum(d=F(1, 2))
    assert upper * lower == 1


def test_e_tilde_series():
    e = e_tilde_series(2, "x")
    assert e.a11.coeff(0) == 1
    assert e.a11.coeff(1) == X * F(1, 5)
    assert e.a11.coeff(2) == X * X * F(3, 35)
    assert e.a22.coeff(1) == X * F(-1, 5)
    assert e.a22.coeff(2) == X * X * F(-8, 175)


def test_r_tilde_series():
    r = r_tilde_series(2, "x", BranchConvention.PRINTED)
    assert r.a11.coeff(0) == 1
    assert r.a12.coeff(1) == 0
    assert r.a21.coeff(1) == R2 * F(7, 40)
    assert r.a12.coeff(2) == R2 * F(1, 70)
    assert r.a21.coeff(2) == BivarPoly({(1, 0): R2 * F(1, 25)})


def test_first_two_sandwich_coefficients():
    sandwich = sandwich_series(2, BranchConvention.PRINTED)
    assert sandwich.order == 2
    assert sorted(sandwich.e) == [1, 2]
    assert sandwich.e[1] == (
        BivarPoly.constant(F(1, 5)),
        BivarPoly(),
        BivarPoly(),
        BivarPoly.constant(F(-1, 5)),
    )
    e11, e12, e21, e22 = sandwich.e[2]
    assert e11 == BivarPoly({(1, 0): F(15, 175), (0, 1): F(8, 175)})
    assert e12.is_zero()
    assert e21 == BivarPoly.constant(AlgNum(c=F(1, 25)))
    assert e22 == BivarPoly({(1, 0): F(-8, 175), (0, 1): F(-15, 175)})


def test_sandwich_reduces_to_identity_on_the_diagonal():
    sandwich = sandwich_series(3)
    assert sandwich.matrix.coeff(0) == (1, 0, 0, 1)
    for j in range(1, 4):
        for entry in sandwich.matrix.coeff(j):
            poly = entry if isinstance(entry, BivarPoly) else BivarPoly.constant(entry)
            assert poly.on_diagonal().is_zero()


def test_sandwich_domain():
    with pytest.raises(ParameterError):
        sandwich_series(0)
