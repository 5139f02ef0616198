"""The phase function g and the conformal map f about z = 1.

g(z) = -(1 - z)^(1/2) + (1/2) ln((1 + (1 - z)^(1/2)) / (1 - (1 - z)^(1/2))) +- pi i / 2
for +-Im z > 0, with the cut of (1 - z)^(1/2) along [1, oo).
"""

from __future__ import annotations

from typing import Any, Literal

import mpmath

from edge_transition.errors import ParameterError
from edge_transition.specfun.context import EvalContext

Side = Literal["+", "-"]

_SERIES_RADIUS = 0.25


def _side_sign(side: Side | None, z: Any) -> int:
    if side not in ("+", "-"):
        raise ParameterError(f"z = {z} lies on the cut of g; pass side='+' or side='-'")
    return 1 if side == "+" else -1


def g_eval(z: Any, ctx: EvalContext, side: Side | None = None) -> Any:
    """g(z), or its boundary value from the side `side` for z on (0, oo).

    Args:
        z: complex point, not 0
        ctx: precision
        side: "+" (from above) or "-" (from below); needed for z in (0, oo)
    Returns:
        complex value
    Raises:
        ParameterError: z = 0, or z on the cut without a side
    """
    with ctx.workprec(16):
        z = mpmath.mpc(z)
        if z == 0:
            raise ParameterError("g has a logarithmic singularity at z = 0")
        if z.imag == 0:
            x = z.real
            if x < 0:
                root = mpmath.sqrt(1 - x)
                value = mpmath.mpc(-root + mpmath.log((1 + root) / (root - 1)) / 2)
                return +value
            sign = _side_sign(side, z)
            if x < 1:
                root = mpmath.mpc(mpmath.sqrt(1 - x))
            else:
                root = -sign * 1j * mpmath.sqrt(x - 1)
        else:
            sign = 1 if z.imag > 0 else -1
            root = mpmath.sqrt(1 - z)
        value = -root + mpmath.log((1 + root) / (1 - root)) / 2 + sign * mpmath.pi * 1j / 2
    with ctx.workprec():
        return +value


def _rho(t: Any) -> Any:
    """3 (atanh(sqrt t) - sqrt t) / t^(3/2), even in sqrt t."""
    if abs(t) < _SERIES_RADIUS:
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        k = 1
        eps = mpmath.eps
        while True:
            term = 3 * power / (2 * k + 1)
            total += term
            if abs(term) < eps * abs(total):
                return total
            power *= t
            k += 1
    w = mpmath.sqrt(t)
    return 3 * (mpmath.atanh(w) - w) / w**3


def f_eval(z: Any, ctx: EvalContext) -> Any:
    """f(z) = 2^(-2/3) (1 - z) rho(1 - z)^(2/3) for |z - 1| < 1.

    Raises:
        ParameterError: z outside the disc |z - 1| < 1
    """
    with ctx.workprec(16):
        z = mpmath.mpmathify(z)
        t = 1 - z
        if abs(t) >= 1:
            raise ParameterError(f"f is evaluated only for |z - 1| < 1, got z = {z}")
        value = mpmath.cbrt(4) ** -1 * t * _rho(t) ** (mpmath.mpf(2) / 3)
    with ctx.workprec():
        return +value
