"""Exact arithmetic: Q(i, sqrt2), polynomials and truncated series."""

from edge_transition.algebra.algnum import ALG_ONE, ALG_ZERO, I_UNIT, R2, AlgNum, ScaledConstant
from edge_transition.algebra.poly import BivarPoly, Poly1, exact_divide_x_minus_y
from edge_transition.algebra.series import Mat2Series, TruncSeries

__all__ = [
    "ALG_ONE",
    "ALG_ZERO",
    "I_UNIT",
    "R2",
    "AlgNum",
    "BivarPoly",
    "Mat2Series",
    "Poly1",
    "ScaledConstant",
    "TruncSeries",
    "exact_divide_x_minus_y",
]
