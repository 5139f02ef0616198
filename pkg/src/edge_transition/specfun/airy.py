"""Airy function Ai and its derivative from the everywhere-convergent Maclaurin series.

Coefficients follow Ai'' = x Ai: a_(n+3) = a_n / ((n+2)(n+3)) with
a_0 = Ai(0), a_1 = Ai'(0), a_2 = 0. Cancellation for negative arguments is
covered by raising the working precision by the size of the largest term,
about exp((2/3)|x|^(3/2)).
"""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import Any, NamedTuple

import mpmath
import numpy as np

from edge_transition.errors import ParameterError, PrecisionExhaustedError
from edge_transition.specfun.context import FLOAT_CONTEXT, EvalContext, as_mpf
from edge_transition.specfun.gamma import gamma

logger = logging.getLogger(__name__)

AIRY_MAX_ARGUMENT = 50


class AiryValue(NamedTuple):
    """Ai, Ai' and a bound on the absolute error of both."""

    ai: Any
    aip: Any
    error_bound: Any


def airy_origin_values(ctx: EvalContext) -> tuple[Any, Any]:
    """Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3)."""
    with ctx.workprec(16):
        third = mpmath.mpf(1) / 3
        ai0 = mpmath.power(3, -2 * third) / gamma(2 * third, ctx)
        aip0 = -mpmath.power(3, -third) / gamma(third, ctx)
    return ai0, aip0


def _guard_bits(modulus: float) -> int:
    return math.ceil((2.0 / 3.0) * modulus**1.5 / math.log(2)) + 32


def _maclaurin(z: Any, modulus: float, ctx: EvalContext) -> AiryValue:
    if modulus > AIRY_MAX_ARGUMENT:
        raise ParameterError(f"|x| = {modulus} above {AIRY_MAX_ARGUMENT}")
    wp = ctx.require(ctx.precision_bits + _guard_bits(modulus))
    wctx = replace(ctx, precision_bits=wp)
    c1, c2 = airy_origin_values(wctx)
    with mpmath.workprec(wp):
        z = +z
        z2 = z * z
        z3 = z2 * z
        target = ctx.target_abs_error
        t0, t1 = c1, c2 * z
        d0, d1 = mpmath.mpf(0), c2
        ai = aip = mpmath.mpf(0)
        abs_sum = mpmath.mpf(0)
        n = 0
        while True:
            ai += t0 + t1
            aip += d0 + d1
            abs_sum += abs(t0) + abs(t1) + abs(d0) + abs(d1)
            d0, d1 = t0 * z2 / (n + 2), t1 * z2 / (n + 3)
            t0, t1 = t0 * z3 / ((n + 2) * (n + 3)), t1 * z3 / ((n + 3) * (n + 4))
            n += 3
            if (n + 2) * (n + 3) >= 2 * modulus**3:
                tail = 2 * max(abs(t0) + abs(t1), abs(d0) + abs(d1))
                if tail < target / 4:
                    break
        rounding = abs_sum * (n + 8) * mpmath.ldexp(mpmath.mpf(1), -wp)
        error = tail + rounding
    if error > target:
        shortfall = math.ceil(float(mpmath.log(error / target, 2)))
        raise PrecisionExhaustedError(
            f"Airy series error {mpmath.nstr(error, 3)} above target", suggested_bits=ctx.precision_bits + shortfall + 16
        )
    with ctx.workprec():
        return AiryValue(+ai, +aip, +error)


def airy_ai(x: Any, ctx: EvalContext) -> AiryValue:
    """(Ai(x), Ai'(x)) for real |x| <= 50 with absolute error below the context target.

    Args:
        x: real argument
        ctx: precision and target
    Returns:
        values at the context precision and the error bound
    Raises:
        ParameterError: |x| > 50
        PrecisionExhaustedError: the working precision needed exceeds the cap
    """
    with ctx.workprec():
        value = as_mpf(x)
    return _maclaurin(value, abs(float(value)), ctx)


def airy_ai_complex(z: Any, ctx: EvalContext) -> AiryValue:
    """(Ai(z), Ai'(z)) for complex |z| <= 50, same series as `airy_ai`."""
    with ctx.workprec():
        value = mpmath.mpc(z)
    return _maclaurin(value, float(abs(value)), ctx)


def airy_decay_bound(x: Any) -> Any:
    """exp(-zeta) / (2 sqrt(pi) x^(1/4)), zeta = (2/3) x^(3/2): an upper bound of Ai(x) for x > 0."""
    x = as_mpf(x)
    if x <= 0:
        raise ParameterError("the decay bound holds for x > 0")
    zeta = 2 * x**1.5 / 3
    return mpmath.exp(-zeta) / (2 * mpmath.sqrt(mpmath.pi) * x**0.25)


def airy_ai_float(x: float) -> tuple[float, float]:
    """Double-precision (Ai(x), Ai'(x)), rounded from `airy_ai`."""
    value = airy_ai(x, FLOAT_CONTEXT)
    return float(value.ai), float(value.aip)


def airy_ai_array(xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """`airy_ai_float` over an array of points."""
    pairs = [airy_ai_float(float(x)) for x in np.ravel(xs)]
    ai = np.array([p[0] for p in pairs]).reshape(np.shape(xs))
    aip = np.array([p[1] for p in pairs]).reshape(np.shape(xs))
    return ai, aip
