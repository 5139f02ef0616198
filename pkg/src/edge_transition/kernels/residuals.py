"""Decay of the weighted kernel residual in h, order by order."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import mpmath
import numpy as np
import pandas as pd

from edge_transition.errors import ParameterError, PrecisionExhaustedError
from edge_transition.kernels.kernels import AiryKernel, TransformedKernel, kernel_correction_eval
from edge_transition.kernels.scaling import ScalingParams

if TYPE_CHECKING:
    from collections.abc import Sequence

    from edge_transition.expansion.assembly import KernelExpansion
    from edge_transition.specfun.context import EvalContext

logger = logging.getLogger(__name__)

DEFAULT_GRID = "-2:6:9,-2:6:9"
DEFAULT_EPSILON = 0.75
GRID_LOWER = -2.0

Point = tuple[float, float]


def parse_axis(text: str) -> list[float]:
    """"x0:x1:n" as n equally spaced values."""
    try:
        start, stop, count = text.split(":")
        n = int(count)
        lo, hi = float(start), float(stop)
    except ValueError as err:
        raise ParameterError(f"axis spec {text!r} is not x0:x1:n") from err
    if n < 1:
        raise ParameterError(f"axis spec {text!r} needs n >= 1")
    return [lo] if n == 1 else list(np.linspace(lo, hi, n))


def parse_grid(text: str) -> list[Point]:
    """"x0:x1:n,y0:y1:n" as the product grid."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ParameterError(f"grid spec {text!r} is not x0:x1:n,y0:y1:n")
    xs, ys = (parse_axis(p) for p in parts)
    return [(float(x), float(y)) for x in xs for y in ys]


def fit_slope(hs: Sequence[float], values: Sequence[float]) -> float:
    """Least-squares slope of log(value) against log(h)."""
    if len(hs) < 3:
        raise ParameterError("a slope fit needs at least three points")
    if min(values) <= 0:
        raise ParameterError("slope fit of non-positive values")
    slope, _ = np.polyfit(np.log(hs), np.log(values), 1)
    return float(slope)


@dataclass
class ResidualGrid:
    """Weighted max residuals rho_m(nu) on a grid and the fitted decay slopes."""

    points: list[Point]
    nus: list[float]
    hs: list[float]
    residuals: dict[int, list[float]] = field(default_factory=dict)
    slopes: dict[int, float] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        """One row per (nu, m): nu, h, m, max_residual, slope."""
        rows = [
            {"nu": nu, "h": h, "m": m, "max_residual": values[i], "slope": self.slopes.get(m)}
            for m, values in sorted(self.residuals.items())
            for i, (nu, h) in enumerate(zip(self.nus, self.hs, strict=True))
        ]
        return pd.DataFrame(rows, columns=["nu", "h", "m", "max_residual", "slope"])


def check_grid(points: Sequence[Point], params: ScalingParams, epsilon: float) -> None:
    """Every grid coordinate lies in [-2, (1 - sqrt(1 - epsilon)) / h)."""
    limit = params.grid_limit(epsilon)
    for x, y in points:
        if min(x, y) < GRID_LOWER:
            raise ParameterError(f"grid point ({x}, {y}) below {GRID_LOWER}")
        if max(x, y) >= limit:
            raise ParameterError(
                f"grid point ({x}, {y}) outside the disc of radius {epsilon} at nu={mpmath.nstr(params.nu, 6)}"
            )


def residual_scan(
    nus: Sequence[float],
    points: Sequence[Point],
    m: int,
    expansion: KernelExpansion,
    ctx: EvalContext,
    epsilon: float = DEFAULT_EPSILON,
) -> ResidualGrid:
    """rho_k(nu) = max over the grid of |K-hat - K^Ai - sum_(j<=k) K_j h^j| e^(x+y), for k <= m.

    Args:
        nus: at least three orders
        points: grid of (x, y)
        m: highest order subtracted, at most expansion.order
        expansion: exact correction kernels
        ctx: precision of all kernel evaluations
        epsilon: disc radius bounding the grid
    Returns:
        residuals and slopes of log rho_k against log h
    Raises:
        ParameterError: bad grid, too few nu values or m above the table order
        PrecisionExhaustedError: a residual is not resolved by the working precision
    """
    if len(nus) < 3:
        raise ParameterError("a residual scan needs at least three values of nu")
    if not 0 <= m <= expansion.order:
        raise ParameterError(f"m={m} outside 0..{expansion.order}")
    if not points:
        raise ParameterError("empty grid")
    ordered = sorted(float(nu) for nu in nus)
    params_list = [ScalingParams.from_nu(nu, ctx) for nu in ordered]
    check_grid(points, params_list[0], epsilon)
    grid = ResidualGrid(list(points), ordered, [float(p.h) for p in params_list])
    airy = AiryKernel(ctx)
    target = ctx.target_abs_error
    for params in params_list:
        khat = TransformedKernel(params, ctx)
        best = [mpmath.mpf(0)] * (m + 1)
        worst_at: list[tuple[Any, Any]] = [(mpmath.mpf(0), mpmath.mpf(0))] * (m + 1)
        with ctx.workprec():
            for x, y in points:
                exact = khat(x, y)
                weight = mpmath.exp(mpmath.mpf(x) + y)
                partial = airy(x, y)
                for k in range(m + 1):
                    if k:
                        partial += kernel_correction_eval(expansion, k, x, y, ctx, airy) * params.h**k
                    value = abs(exact - partial) * weight
                    if value > best[k]:
                        best[k] = value
                        worst_at[k] = (weight, exact)
        for k in range(m + 1):
            weight, exact = worst_at[k]
            bound = 1000 * target * weight * (1 + abs(exact))
            if best[k] < 10 * bound:
                raise PrecisionExhaustedError(
                    f"residual {mpmath.nstr(best[k], 3)} at nu={mpmath.nstr(params.nu, 6)}, m={k} "
                    "is not resolved by the working precision",
                    suggested_bits=2 * ctx.precision_bits,
                )
            grid.residuals.setdefault(k, []).append(float(best[k]))
        logger.info(
            "nu=%s h=%.6g residuals %s",
            mpmath.nstr(params.nu, 6),
            float(params.h),
            ", ".join(f"m={k}: {float(best[k]):.3e}" for k in range(m + 1)),
        )
    grid.slopes = {k: fit_slope(grid.hs, values) for k, values in grid.residuals.items()}
    return grid
