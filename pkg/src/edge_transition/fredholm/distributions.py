"""Tracy-Widom F(t), the hard-edge gap probability E_2, and the order of their difference in h."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from edge_transition.errors import ParameterError
from edge_transition.fredholm.determinant import DEFAULT_NODES, DeterminantResult, nystrom_det
from edge_transition.kernels.residuals import fit_slope
from edge_transition.specfun.airy import airy_ai_float
from edge_transition.specfun.bessel import BESSEL_MAX_ARGUMENT, bessel_j_float

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-14
T_RANGE = (-10.0, 10.0)
E2_MAX_ORDER = 400


def truncation_point(t: float) -> float:
    """T = max(t + 25, 12)."""
    return max(t + 25.0, 12.0)


def airy_trace_tail(upper: float) -> float:
    """Bound on the trace of the Airy kernel beyond upper: (1 + 7/(72 zeta))^2 exp(-2 zeta) / (8 pi)."""
    if upper <= 0:
        raise ParameterError("the tail bound needs a positive truncation point")
    zeta = 2 * upper**1.5 / 3
    return (1 + 7 / (72 * zeta)) ** 2 * math.exp(-2 * zeta) / (8 * math.pi)


def integrable_matrix(x: np.ndarray, p: np.ndarray, q: np.ndarray, diagonal: np.ndarray) -> np.ndarray:
    """(p_i q_j - q_i p_j) / (x_i - x_j) off the diagonal and `diagonal` on it."""
    numerator = p[:, None] * q[None, :] - q[:, None] * p[None, :]
    denominator = x[:, None] - x[None, :]
    out = np.empty_like(numerator)
    off = ~np.eye(len(x), dtype=bool)
    out[off] = numerator[off] / denominator[off]
    out[~off] = diagonal
    return out


def airy_matrix(x: np.ndarray) -> np.ndarray:
    """K^Ai(x_i, x_j) in double precision."""
    pairs = [airy_ai_float(float(v)) for v in x]
    ai = np.array([v[0] for v in pairs])
    aip = np.array([v[1] for v in pairs])
    return integrable_matrix(x, ai, aip, aip**2 - x * ai**2)


def bessel_matrix(nu: float) -> Callable[[np.ndarray], np.ndarray]:
    """Node vector -> K_nu^Bes(x_i, x_j) for x > 0."""

    def build(x: np.ndarray) -> np.ndarray:
        root = np.sqrt(x)
        pairs = [bessel_j_float(nu, float(r)) for r in root]
        j = np.array([v[0] for v in pairs])
        jp = np.array([v[1] for v in pairs])
        q = root * jp / 2
        diag = ((1 - nu**2 / x) * j**2 + jp**2) / 4
        return integrable_matrix(x, j, q, diag)

    return build


def transformed_matrix(nu: float) -> Callable[[np.ndarray], np.ndarray]:
    """Node vector -> K-hat_nu(t_i, t_j) in the chart t with phi(t) = nu^2 (1 - h t)^2."""
    h = 2 ** (-1 / 3) * nu ** (-2 / 3)

    def build(t: np.ndarray) -> np.ndarray:
        root = nu * (1 - h * t)
        phi = root**2
        pairs = [bessel_j_float(nu, float(r)) for r in root]
        j = np.array([v[0] for v in pairs])
        jp = np.array([v[1] for v in pairs])
        q = root * jp / 2
        diag = ((1 - nu**2 / phi) * j**2 + jp**2) / 4
        bessel = integrable_matrix(phi, j, q, diag)
        jac = np.sqrt(2 * nu * h * root)
        return jac[:, None] * bessel * jac[None, :]

    return build


def tracy_widom_F(t: float, n: int = DEFAULT_NODES, upper: float | None = None) -> DeterminantResult:
    """F(t) = det(I - K^Ai) on L2(t, oo), truncated at T = max(t + 25, 12).

    Args:
        t: point in [-10, 10]
        n: Nystrom nodes
        upper: truncation point replacing the default T
    Raises:
        ParameterError: t outside [-10, 10], or the tail bound at T above 1e-14
    """
    if not T_RANGE[0] <= t <= T_RANGE[1]:
        raise ParameterError(f"t={t} outside {T_RANGE}")
    cut = truncation_point(t) if upper is None else upper
    tail = airy_trace_tail(cut)
    if tail > TAIL_TOLERANCE:
        raise ParameterError(f"Airy tail beyond T={cut} is {tail:.2e}, above {TAIL_TOLERANCE}")
    return nystrom_det(airy_matrix, (t, cut), n)


def e2_hard(s: float, nu: float, n: int = DEFAULT_NODES) -> DeterminantResult:
    """E_2^hard(s; nu) = det(I - K_nu^Bes) on L2(0, s).

    For nu > 0 the operator is discretized in the chart x = phi(t), where it becomes
    K-hat on (t_s, 1/h), t_s = (1 - sqrt(s)/nu)/h, truncated at max(t_s + 25, 12).
    """
    if s <= 0:
        raise ParameterError("the gap needs s > 0")
    if not 0 <= nu <= E2_MAX_ORDER:
        raise ParameterError(f"nu={nu} outside [0, {E2_MAX_ORDER}]")
    if math.sqrt(s) > BESSEL_MAX_ARGUMENT:
        raise ParameterError(f"s={s} outside the Bessel evaluation box")
    if nu == 0:
        return nystrom_det(bessel_matrix(0.0), (0.0, s), n)
    h = 2 ** (-1 / 3) * nu ** (-2 / 3)
    start = (1 - math.sqrt(s) / nu) / h
    stop = min(truncation_point(start), 1 / h)
    return nystrom_det(transformed_matrix(nu), (start, stop), n)


@dataclass
class TransitionReport:
    """|E_2^hard(phi_nu(t); nu) - F(t)| per nu and its decay slope in log h."""

    t: float
    nus: list[float]
    hs: list[float]
    e2: list[float]
    f: float
    diffs: list[float] = field(default_factory=list)
    slope: float | None = None

    def to_frame(self) -> pd.DataFrame:
        """Rows t, nu, h, E2, F, diff, slope."""
        return pd.DataFrame(
            {
                "t": self.t,
                "nu": self.nus,
                "h": self.hs,
                "E2": self.e2,
                "F": self.f,
                "diff": self.diffs,
                "slope": self.slope,
            },
            columns=["t", "nu", "h", "E2", "F", "diff", "slope"],
        )


def transition_study(t: float, nus: Sequence[float], n: int = DEFAULT_NODES) -> TransitionReport:
    """Difference between the hard-edge gap at phi_nu(t) and F(t) along a list of nu.

    The slope is fitted only with three or more values of nu.
    """
    ordered = sorted(float(nu) for nu in nus)
    if not ordered or min(ordered) <= 0:
        raise ParameterError("transition study needs positive nu values")
    reference = tracy_widom_F(t, n)
    hs, e2 = [], []
    for nu in ordered:
        h = 2 ** (-1 / 3) * nu ** (-2 / 3)
        if t * h >= 1:
            raise ParameterError(f"t={t} is not below 1/h at nu={nu}")
        phi = (nu * (1 - h * t)) ** 2
        value = e2_hard(phi, nu, n)
        hs.append(h)
        e2.append(value.value)
        logger.info("t=%g nu=%g: E2=%.12f F=%.12f", t, nu, value.value, reference.value)
    diffs = [abs(v - reference.value) for v in e2]
    slope = fit_slope(hs, diffs) if len(ordered) >= 3 else None
    return TransitionReport(t, ordered, hs, e2, reference.value, diffs, slope)
