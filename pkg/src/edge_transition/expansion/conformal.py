"""Local conformal map f near z = 1, its scaled h-series and the E-factor.

Series in the variable "s" are expansions in s = z - 1; series in "h" are
expansions in the scaling parameter h = 2^(-1/3) nu^(-2/3) after the
substitution z = (1 - h x)^2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any

from edge_transition.algebra.algnum import AlgNum, ScaledConstant
from edge_transition.algebra.poly import BivarPoly, Poly1
from edge_transition.algebra.series import Mat2Series, TruncSeries
from edge_transition.errors import FieldExtensionError, ParameterError

logger = logging.getLogger(__name__)

S = "s"
H = "h"

# e^(-i pi/4) and e^(i pi/4)
EXP_MINUS_I_PI_4 = AlgNum(b=Fraction(1, 2), d=Fraction(-1, 2))
EXP_I_PI_4 = AlgNum(b=Fraction(1, 2), d=Fraction(1, 2))

# nu^(2/3) = 2^(-1/3) h^(-1)
NU_TWO_THIRDS = ScaledConstant.of(1, Fraction(-1, 3), -1)


@dataclass(frozen=True)
class FactoredSeries:
    """constant * var**shift * unit, with `unit` a series of constant term 1."""

    constant: ScaledConstant
    shift: int
    unit: TruncSeries

    def derivative_at_zero(self) -> ScaledConstant:
        """Symbolic value of the first derivative at var = 0 when shift == 1."""
        if self.shift != 1:
            raise ParameterError("derivative_at_zero needs a simple zero")
        return self.constant * self.unit.coeff(0)


def split_h(constant: ScaledConstant) -> tuple[AlgNum, int]:
    """Separate an integer power of h from a constant that must otherwise lie in Q(i, sqrt2).

    Raises:
        FieldExtensionError: fractional power of h, or a power of 2 outside Q(sqrt2)
    """
    if constant.h_exponent.denominator != 1:
        raise FieldExtensionError(f"h^{constant.h_exponent} does not cancel")
    shift = int(constant.h_exponent)
    return ScaledConstant(constant.coeff, constant.two_exponent).to_algnum(), shift


def rho_series(order: int) -> TruncSeries:
    """rho(t) = 1 + sum_(k>=1) 3 t^k / (2k + 3), in the variable s with t = -s.

    (3/2) sum_(k>=1) w^(2k+1)/(2k+1) = (w^3/2) rho(w^2), and w^2 = 1 - z = -s.
    """
    coeffs = [Fraction(1)] + [Fraction(3 * (-1) ** k, 2 * k + 3) for k in range(1, order)]
    return TruncSeries(S, 0, tuple(coeffs), order)


def f_series(order: int) -> FactoredSeries:
    """f(z) = -2^(-2/3) (z - 1) r(z) with r = rho^(2/3), r known modulo s**order.

    Args:
        order: truncation order of r in s = z - 1
    Returns:
        the factored series; the power of 2 stays symbolic
    """
    if order < 1:
        raise ParameterError("f_series needs order >= 1")
    r = rho_series(order).pow_rational(Fraction(2, 3))
    logger.debug("f-series r(s) to order %d: %s", order, r)
    return FactoredSeries(ScaledConstant.of(-1, Fraction(-2, 3)), 1, r)


def z_minus_one(variable: Any) -> TruncSeries:
    """s = (1 - h v)^2 - 1 = -2 v h + v^2 h^2 as an exact h-series."""
    return TruncSeries(H, 1, (variable * -2, variable * variable))


def scaled_f_series(j_max: int, variable: Any | None = None) -> TruncSeries:
    """nu^(2/3) f((1 - h x)^2) = x + sum_j p_(1,j)(x) h^j, through h**j_max.

    Args:
        j_max: highest power of h kept
        variable: coefficient-ring element standing for x (default the Poly1 x)
    Returns:
        h-series of order j_max + 1 with rational polynomial coefficients
    Raises:
        FieldExtensionError: the powers of 2 and h do not cancel
    """
    if j_max < 1:
        raise ParameterError("scaled_f_series needs j_max >= 1")
    var = Poly1([0, 1]) if variable is None else variable
    f = f_series(j_max + 1)
    constant, shift = split_h(NU_TWO_THIRDS * f.constant)
    if not constant.is_rational():
        raise FieldExtensionError(f"scaled conformal map keeps the irrational factor {constant}")
    s_unit = f.unit.shift(f.shift)
    zeta = s_unit.compose(z_minus_one(var), j_max + 1 - shift).shift(shift) * constant.a
    if zeta.coeff(0) != var:
        raise FieldExtensionError("scaled conformal map does not start with x")
    return zeta


def p_table(m_max: int, j_max: int, variable: Any | None = None) -> dict[tuple[int, int], Any]:
    """p_(m,j) for 0 <= m <= m_max, m <= j <= j_max, from powers of the reduced series.

    (nu^(2/3) f - x)^m / m! = sum_(j>=m) p_(m,j) h^j, and p_(0,0) = 1.
    """
    var = Poly1([0, 1]) if variable is None else variable
    reduced = scaled_f_series(j_max, var) - var
    table: dict[tuple[int, int], Any] = {(0, 0): var ** 0}
    power = TruncSeries.constant(H, Fraction(1), j_max + 1)
    for m in range(1, m_max + 1):
        power = power * reduced
        for j in range(m, j_max + 1):
            value = power.coeff(j) * Fraction(1, factorial(m))
            # absent coefficients come back as Fraction(0)
            table[(m, j)] = var * 0 + value if isinstance(value, Fraction) else value
    return table


def p_coeffs(m: int, j_max: int) -> list[Poly1]:
    """p_(m,j)(x) for j = 0..j_max, zero for j < m.

    Args:
        m: power of the reduced conformal series
        j_max: highest power of h
    Returns:
        list indexed by j
    """
    if not 1 <= m <= j_max:
        raise ParameterError("p_coeffs needs 1 <= m <= j_max")
    table = p_table(m, j_max)
    return [table.get((m, j), Poly1()) for j in range(j_max + 1)]


def p_convolution(m: int, n: int, j: int, table: dict[tuple[int, int], Any]) -> Any:
    """Right-hand side of p_(m,j) = ((m-n)! n! / m!) sum_k p_(m-n,k) p_(n,j-k)."""
    weight = Fraction(factorial(m - n) * factorial(n), factorial(m))
    products = [table[(m - n, k)] * table[(n, j - k)] for k in range(m - n, j - n + 1)]
    total = products[0]
    for term in products[1:]:
        total = total + term
    return total * weight


@dataclass(frozen=True)
class EFactor:
    """E(z) = C * diag(r^(1/4), r^(-1/4)) with C = (2h)^(-sigma3/4) e^(-i pi sigma3/4) sigma3."""

    c11: ScaledConstant
    c22: ScaledConstant
    inner: Mat2Series


def e_factor_series(order: int) -> EFactor:
    """E-factor about z = 1 with the inner diagonal known modulo s**(order + 1).

    Args:
        order: highest power of s = z - 1 kept
    Returns:
        symbolic constant prefactor and inner diagonal series
    """
    if order < 0:
        raise ParameterError("e_factor_series needs order >= 0")
    r = f_series(order + 1).unit
    inner = Mat2Series.diagonal(r.pow_rational(Fraction(1, 4)), r.pow_rational(Fraction(-1, 4)))
    c11 = ScaledConstant(EXP_MINUS_I_PI_4, Fraction(-1, 4), Fraction(-1, 4))
    c22 = ScaledConstant(-EXP_I_PI_4, Fraction(1, 4), Fraction(1, 4))
    return EFactor(c11, c22, inner)


def bivariate(variable: str) -> BivarPoly:
    """BivarPoly x or y."""
    return BivarPoly.x() if variable == "x" else BivarPoly.y()
