"""Bessel function J_nu and its derivative from the ascending series.

No large-order asymptotics are used here: the kernel expansion under test is
itself such an asymptotic description. The alternating series cancels badly
near t ~ nu, so the working precision is raised by the size of its largest term.
"""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import Any, NamedTuple

import mpmath

from edge_transition.errors import ParameterError, PrecisionExhaustedError
from edge_transition.specfun.context import FLOAT_CONTEXT, EvalContext, as_mpf
from edge_transition.specfun.gamma import gamma

logger = logging.getLogger(__name__)

BESSEL_MAX_ARGUMENT = 2000
BESSEL_MAX_ORDER = 1200


class BesselValue(NamedTuple):
    """J_nu(t), J_nu'(t) and a bound on the absolute error of both."""

    j: Any
    jp: Any
    error_bound: Any


def _log2_max_term(nu: float, t: float) -> float:
    """log2 of the largest |term| of the series, from lgamma in double precision."""
    half = math.log(t / 2)
    best = -math.inf
    k_peak = max(0.0, (-nu + math.sqrt(nu * nu + t * t)) / 2)
    for k in {0, math.floor(k_peak), math.ceil(k_peak)}:
        log_term = (nu + 2 * k) * half - math.lgamma(k + 1) - math.lgamma(nu + k + 1)
        best = max(best, log_term)
    return best / math.log(2)


def working_bits(nu: float, t: float, ctx: EvalContext) -> int:
    """Precision for the series: the larger of the linear rule and the largest-term estimate."""
    rule = math.ceil(0.45 * t) + ctx.bits + 64
    growth = math.ceil(max(_log2_max_term(nu, t), 0.0)) + ctx.bits + 64
    return ctx.require(max(ctx.precision_bits, rule, growth))


def bessel_j(nu: Any, t: Any, ctx: EvalContext) -> BesselValue:
    """(J_nu(t), J_nu'(t)) for 0 <= nu <= 1200, 0 < t <= 2000.

    Args:
        nu: order
        t: positive argument
        ctx: precision and target
    Returns:
        values at the context precision and the error bound
    Raises:
        ParameterError: arguments outside the supported box
        PrecisionExhaustedError: the working precision needed exceeds the cap
    """
    nu_f, t_f = float(nu), float(t)
    if not 0 <= nu_f <= BESSEL_MAX_ORDER:
        raise ParameterError(f"order {nu} outside [0, {BESSEL_MAX_ORDER}]")
    if not 0 < t_f <= BESSEL_MAX_ARGUMENT:
        raise ParameterError(f"argument {t} outside (0, {BESSEL_MAX_ARGUMENT}]")
    wp = working_bits(nu_f, t_f, ctx)
    wctx = replace(ctx, precision_bits=wp)
    with mpmath.workprec(wp):
        nu_m = as_mpf(nu)
        t_m = as_mpf(t)
        half = t_m / 2
        q = half * half
        term = mpmath.power(half, nu_m) / gamma(nu_m + 1, wctx)
        value = deriv = abs_sum = mpmath.mpf(0)
        target = ctx.target_abs_error
        k = 0
        while True:
            value += term
            deriv += term * (nu_m + 2 * k)
            abs_sum += abs(term) * (1 + abs(nu_m + 2 * k) / t_m)
            ratio = q / ((k + 1) * (nu_m + k + 1))
            term = -term * ratio
            k += 1
            if ratio <= 0.5:
                tail = 2 * abs(term) * (1 + (nu_m + 2 * k) / t_m)
                if tail < target / 4:
                    break
        deriv /= t_m
        error = tail + abs_sum * (k + 8) * mpmath.ldexp(mpmath.mpf(1), -wp)
    if error > target:
        shortfall = math.ceil(float(mpmath.log(error / target, 2)))
        raise PrecisionExhaustedError(
            f"Bessel series error {mpmath.nstr(error, 3)} above target at nu={nu}, t={t}",
            suggested_bits=ctx.precision_bits + shortfall + 16,
        )
    logger.debug("J_%s(%s): %d terms at %d bits", nu, t, k, wp)
    with ctx.workprec():
        return BesselValue(+value, +deriv, +error)


def bessel_j_float(nu: float, t: float) -> tuple[float, float]:
    """Double-precision (J_nu(t), J_nu'(t)), rounded from `bessel_j`."""
    value = bessel_j(nu, t, FLOAT_CONTEXT)
    return float(value.j), float(value.jp)
