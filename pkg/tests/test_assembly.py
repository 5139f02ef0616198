"""Assembly of the exact correction kernels K_j."""

from __future__ import annotations

from fractions import Fraction

import pytest

from edge_transition.algebra import R2, BivarPoly
from edge_transition.errors import FieldExtensionError, ParameterError, TheoryViolationError
from edge_transition.expansion import (
    BranchConvention,
    KernelExpansion,
    a_coeffs,
    assemble_kernel_expansion,
    prefactor_series,
    reduced_a_coeffs,
)
from edge_transition.expansion.assembly import COMPONENTS, airy_part_series

F = Fraction
X = BivarPoly.x()
Y = BivarPoly.y()


def _as_bivar(value):
    return value if isinstance(value, BivarPoly) else BivarPoly.constant(value)


K1 = {
    "00": (X * X + X * Y + Y * Y) * F(-3, 10),
    "01": BivarPoly.constant(F(1, 5)),
    "10": BivarPoly.constant(F(1, 5)),
    "11": (X + Y) * F(3, 10),
}

K2_01 = (
    (X**4 + X**3 * Y - X**2 * Y**2 - X * Y**3 - Y**4) * 63 - X * 55 + Y * 239
) / 1400

K2 = {
    "00": (56 - (X**3 + Y**3) * 235 - X * Y * (X + Y) * 319) / 1400,
    "01": K2_01,
    "10": K2_01.swap(),
    "11": ((X * X + Y * Y) * 340 + X * Y * 256) / 1400,
}


def test_first_correction_kernel(expansion2):
    assert expansion2.order == 2
    for comp in COMPONENTS:
        assert expansion2.terms[1][comp] == K1[comp], comp


def test_second_correction_kernel(expansion2):
    for comp in COMPONENTS:
        assert expansion2.terms[2][comp] == K2[comp], comp


def test_lookup_by_derivative_orders(expansion2):
    assert expansion2.p(1, 1, 1) == K1["11"]
    assert expansion2.p(2, 1, 0) == K2["10"]
    with pytest.raises(ParameterError):
        expansion2.p(3, 0, 0)
    with pytest.raises(ParameterError):
        expansion2.p(0, 0, 0)


def test_table_invariants_hold(expansion2):
    expansion2.check_invariants()
    for _, comp, poly in expansion2:
        assert poly.is_rational()
        if comp in ("00", "11"):
            assert poly.is_symmetric()


def test_branch_conventions_agree_through_second_order(expansion2):
    printed = assemble_kernel_expansion(2, BranchConvention.PRINTED)
    assert printed.terms == expansion2.terms
    assert printed.branch is BranchConvention.PRINTED
    assert expansion2.branch is BranchConvention.PRINCIPAL


def test_printed_branch_stops_at_second_order():
    with pytest.raises(ParameterError, match="principal"):
        assemble_kernel_expansion(3, BranchConvention.PRINTED)


def test_padding_check_passes():
    expansion = assemble_kernel_expansion(1, verify_padding=True)
    assert expansion.terms[1] == K1


def test_empty_and_invalid_orders():
    empty = assemble_kernel_expansion(0)
    assert empty.order == 0
    assert list(empty) == []
    with pytest.raises(ParameterError):
        assemble_kernel_expansion(-1)


def test_json_document(expansion2):
    doc = expansion2.to_json()
    assert doc["order"] == 2
    assert doc["branch"] == "principal"
    assert len(doc["terms"]) == 8
    first = doc["terms"][0]
    assert (first["j"], first["kappa"], first["lambda"]) == (1, 0, 0)
    assert first["poly"][0] == {"dx": 2, "dy": 0, "num": -3, "den": 10}
    assert KernelExpansion.from_json(doc) == expansion2


def test_truncated(expansion2):
    first = expansion2.truncated(1)
    assert first.order == 1
    assert sorted(first.terms) == [1]


def test_invariant_violations_name_the_entry():
    asymmetric = dict(K1, **{"00": X * 2 + Y})
    with pytest.raises(TheoryViolationError) as info:
        KernelExpansion(1, {1: asymmetric}).check_invariants()
    assert info.value.j == 1
    assert info.value.component == "00"

    mismatched = dict(K1, **{"10": X})
    with pytest.raises(TheoryViolationError) as info:
        KernelExpansion(1, {1: mismatched}).check_invariants()
    assert info.value.component == "01"

    irrational = dict(K1, **{"11": X * R2})
    with pytest.raises(FieldExtensionError) as info:
        KernelExpansion(1, {1: irrational}).check_invariants()
    assert info.value.component == "11"


def test_prefactor_series():
    r = prefactor_series(4)
    assert r[2] == BivarPoly.constant(F(1, 8))
    for j in (2, 3, 4):
        assert r[j].total_degree == j - 2
        assert r[j].is_symmetric()
    with pytest.raises(ParameterError):
        prefactor_series(1)


def test_displayed_airy_sums():
    a00, a01, a11 = a_coeffs(1)
    assert a00 == (Y**3 - X**3) * F(3, 10)
    r00, _, r11 = reduced_a_coeffs(1)
    assert r00 == K1["00"]
    assert r11 == K1["11"]
    with pytest.raises(ParameterError):
        a_coeffs(0)


@pytest.mark.parametrize("n", range(1, 5))
def test_displayed_sums_match_the_series_product(n):
    part = airy_part_series(n)
    a00, a01, a11 = a_coeffs(n)
    assert _as_bivar(part["00"].coeff(n)) == a00
    assert _as_bivar(part["01"].coeff(n)) == a01
    assert _as_bivar(part["10"].coeff(n)) == -a01.swap()
    assert _as_bivar(part["11"].coeff(n)) == a11


@pytest.mark.parametrize(
    "n", [*range(1, 7), pytest.param(7, marks=pytest.mark.slow), pytest.param(8, marks=pytest.mark.slow)]
)
def test_displayed_sums_vanish_on_the_diagonal(n):
    a00, a01, a11 = a_coeffs(n)
    for poly in (a00, a01, a11):
        assert poly.on_diagonal().is_zero()
    assert a00.swap() == -a00
    assert a11.swap() == -a11


@pytest.mark.slow()
def test_fourth_order_table(expansion2):
    expansion = assemble_kernel_expansion(4)
    expansion.check_invariants()
    assert expansion.truncated(2) == expansion2
    for j in (3, 4):
        assert expansion.terms[j]["01"] == expansion.terms[j]["10"].swap()
