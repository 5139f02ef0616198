"""The sandwich E(z_y)^-1 R(z_y)^-1 R(z_x) E(z_x) as an h-series with polynomial entries.

With z_v = (1 - h v)^2, D = h^(sigma3/4) C and R~ = h^(sigma3/4) R h^(-sigma3/4),
the product equals E~_y^-1 D^-1 (R~_y^-1 R~_x) D E~_x where
E~ = diag(r^(1/4), r^(-1/4)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from edge_transition.algebra.algnum import ScaledConstant
from edge_transition.algebra.poly import BivarPoly, exact_divide_x_minus_y
from edge_transition.algebra.series import Mat2Series, TruncSeries
from edge_transition.errors import FieldExtensionError, ParameterError, TheoryViolationError
from edge_transition.expansion.conformal import H, bivariate, e_factor_series, z_minus_one
from edge_transition.expansion.riemann_hilbert import BranchConvention, RPair, r_outer_inner

logger = logging.getLogger(__name__)

# exponent shift of each entry under h^(sigma3/4) X h^(-sigma3/4)
_CONJUGATION_SHIFT = (Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(0))

Matrix2 = tuple[BivarPoly, BivarPoly, BivarPoly, BivarPoly]


@dataclass(frozen=True)
class SandwichExpansion:
    """I + (x - y) sum_j e_j h^j, with the full matrix series kept for assembly."""

    order: int
    e: dict[int, Matrix2]
    matrix: Mat2Series


def required_k(j_max: int) -> int:
    """Largest k whose R_k reaches h**j_max: 3k/2 - 1/2 <= j_max."""
    return max((2 * j_max + 1) // 3, 1)


def _compose_shifted(
    entry: TruncSeries, sub: TruncSeries, exponent: Fraction, target: int
) -> TruncSeries:
    """h**exponent * entry(sub), known modulo h**target."""
    if entry.is_zero():
        return TruncSeries.zero(H, target)
    if exponent.denominator != 1:
        raise FieldExtensionError(f"h^{exponent} survives in the R-series")
    shift = int(exponent)
    return entry.compose(sub, target - shift).shift(shift)


def e_tilde_series(j_max: int, variable: str) -> Mat2Series:
    """E~((1 - h v)^2) = diag(r^(1/4), r^(-1/4)) through h**j_max."""
    factor = e_factor_series(j_max)
    sub = z_minus_one(bivariate(variable))
    return factor.inner.map_entries(lambda e: e.compose(sub, j_max + 1))


def r_tilde_series(
    j_max: int,
    variable: str,
    branch: BranchConvention = BranchConvention.PRINCIPAL,
    pairs: list[RPair] | None = None,
) -> Mat2Series:
    """R~((1 - h v)^2) = I + sum_k h^(3k/2) h^(sigma3/4) R_k^in h^(-sigma3/4) through h**j_max.

    Args:
        j_max: highest power of h kept
        variable: "x" or "y"
        branch: branch convention of the odd jumps
        pairs: precomputed R_k pairs, reused when given
    Returns:
        matrix h-series with bivariate polynomial coefficients
    """
    k_max = required_k(j_max)
    if pairs is None:
        pairs = r_outer_inner(k_max, j_max + 1, branch)
    sub = z_minus_one(bivariate(variable))
    target = j_max + 1
    total = Mat2Series.identity(H, target)
    for pair in pairs[:k_max]:
        base = Fraction(3 * pair.k, 2)
        entries = [
            _compose_shifted(e, sub, base + shift, target)
            for e, shift in zip(pair.inner.entries(), _CONJUGATION_SHIFT, strict=True)
        ]
        total = total + Mat2Series(*entries)
    return total


def conjugation_factors() -> tuple[ScaledConstant, ScaledConstant]:
    """(D22/D11, D11/D22) for D = h^(sigma3/4) C."""
    factor = e_factor_series(0)
    d11 = factor.c11 * ScaledConstant.of(1, 0, Fraction(1, 4))
    d22 = factor.c22 * ScaledConstant.of(1, 0, Fraction(-1, 4))
    return d22 / d11, d11 / d22


def _e_inverse(e_tilde: Mat2Series) -> Mat2Series:
    # E~ = diag(a, 1/a)
    return Mat2Series.diagonal(e_tilde.a22, e_tilde.a11)


def sandwich_matrix(
    j_max: int, branch: BranchConvention = BranchConvention.PRINCIPAL
) -> Mat2Series:
    """E(z_y)^-1 R(z_y)^-1 R(z_x) E(z_x) through h**j_max."""
    pairs = r_outer_inner(required_k(j_max), j_max + 1, branch)
    r_x = r_tilde_series(j_max, "x", branch, pairs)
    r_y = r_tilde_series(j_max, "y", branch, pairs)
    e_x = e_tilde_series(j_max, "x")
    e_y = e_tilde_series(j_max, "y")
    upper, lower = (c.to_algnum() for c in conjugation_factors())
    middle = (r_y.inverse() * r_x).scale_offdiagonal(upper, lower)
    return (_e_inverse(e_y) * middle * e_x).truncate(j_max + 1)


def sandwich_series(
    j_max: int, branch: BranchConvention = BranchConvention.PRINCIPAL
) -> SandwichExpansion:
    """Extract e_j from the sandwich, checking it reduces to I on the diagonal x = y.

    Args:
        j_max: highest power of h
        branch: branch convention of the odd jumps
    Returns:
        the e_j matrices for 1 <= j <= j_max and the full matrix series
    Raises:
        TheoryViolationError: the sandwich differs from I at x = y
    """
    if j_max < 1:
        raise ParameterError("sandwich_series needs j_max >= 1")
    matrix = sandwich_matrix(j_max, branch)
    identity = (1, 0, 0, 1)
    e: dict[int, Matrix2] = {}
    for j in range(j_max + 1):
        coeffs = matrix.coeff(j)
        if j == 0:
            if any(c != ident for c, ident in zip(coeffs, identity, strict=True)):
                raise TheoryViolationError("sandwich does not start with I", j=0)
            continue
        quotients = []
        for idx, c in enumerate(coeffs):
            poly = c if isinstance(c, BivarPoly) else BivarPoly.constant(c)
            if not poly.on_diagonal().is_zero():
                raise TheoryViolationError(
                    f"sandwich differs from I at x = y in entry {idx}", j=j
                )
            quotients.append(exact_divide_x_minus_y(poly, j=j))
        e[j] = (quotients[0], quotients[1], quotients[2], quotients[3])
        logger.debug("e_%d = %s", j, e[j])
    return SandwichExpansion(j_max, e, matrix)
