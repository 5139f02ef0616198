"""Gauss-Legendre rules by Newton iteration on the Legendre recurrence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from edge_transition.errors import ConvergenceError, ParameterError

if TYPE_CHECKING:
    from collections.abc import Callable

MAX_NODES = 400
MAX_NEWTON_STEPS = 100


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes in (-1, 1), ascending, with their weights."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        """Number of nodes."""
        return len(self.nodes)

    def mapped(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights for the interval (a, b)."""
        half = (b - a) / 2
        return a + half * (self.nodes + 1), half * self.weights

    def integrate(self, fn: Callable[[np.ndarray], np.ndarray], a: float = -1.0, b: float = 1.0) -> float:
        """sum w_i fn(x_i) on (a, b)."""
        x, w = self.mapped(a, b)
        return float(np.dot(w, fn(x)))


def _legendre(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(P_n(x), P_(n-1)(x)) by the three-term recurrence."""
    prev = np.ones_like(x)
    cur = x.copy()
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return cur, prev


def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule, 2 <= n <= 400.

    Raises:
        ParameterError: n outside the supported range
        ConvergenceError: Newton iteration did not settle
    """
    if not 2 <= n <= MAX_NODES:
        raise ParameterError(f"n={n} outside 2..{MAX_NODES}")
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(MAX_NEWTON_STEPS):
        p, p_prev = _legendre(n, x)
        dp = n * (x * p - p_prev) / (x * x - 1)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) < 1e-14:
            break
    else:
        raise ConvergenceError(f"Gauss-Legendre nodes for n={n} did not converge")
    p, p_prev = _legendre(n, x)
    dp = n * (x * p - p_prev) / (x * x - 1)
    weights = 2 / ((1 - x * x) * dp * dp)
    order = np.argsort(x)
    return QuadratureRule(x[order], weights[order])
