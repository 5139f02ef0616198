"""Gamma function for the Bessel series denominators."""

from __future__ import annotations

import math
from typing import Any

import mpmath

from edge_transition.errors import ParameterError
from edge_transition.specfun.context import EvalContext, as_mpf

GAMMA_MAX_ARGUMENT = 2500


def is_integer(value: Any) -> bool:
    """True for ints and integer-valued reals."""
    return bool(mpmath.isint(as_mpf(value)))


def gamma(a: Any, ctx: EvalContext) -> Any:
    """Gamma(a) for 0 < a <= 2500 at the context's precision.

    Integers use the exact factorial; other arguments go through mpmath.gamma.

    Raises:
        ParameterError: a outside (0, 2500]
    """
    with ctx.workprec(16):
        value = as_mpf(a)
        if value <= 0:
            raise ParameterError(f"gamma needs a positive argument, got {a}")
        if value > GAMMA_MAX_ARGUMENT:
            raise ParameterError(f"gamma argument {a} above {GAMMA_MAX_ARGUMENT}")
        if is_integer(value):
            return mpmath.mpf(math.factorial(int(value) - 1))
        return mpmath.gamma(value)
