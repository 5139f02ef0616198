"""Fredholm determinants det(I - K) on an interval by Nystrom discretization."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import lu_factor

from edge_transition.errors import NonFiniteValueError, ParameterError
from edge_transition.fredholm.quadrature import gauss_legendre

if TYPE_CHECKING:
    from collections.abc import Callable

logger = logging.getLogger(__name__)

DEFAULT_NODES = 40


@dataclass(frozen=True)
class DeterminantResult:
    """det(I - K) on (a, b) with n nodes and the node-doubling error estimate."""

    value: float
    n_nodes: int
    interval: tuple[float, float]
    error_estimate: float

    @property
    def truncation(self) -> float:
        """Upper end of the discretized interval."""
        return self.interval[1]


def pivoted_det(matrix: np.ndarray) -> float:
    """Determinant from the pivoted LU factorization."""
    lu, piv = lu_factor(matrix, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
    sign = -1.0 if swaps % 2 else 1.0
    return sign * float(np.prod(np.diag(lu)))


def nystrom_matrix(kernel: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> np.ndarray:
    """delta_ij - sqrt(w_i) K(x_i, x_j) sqrt(w_j) on the mapped Gauss-Legendre nodes."""
    x, w = gauss_legendre(n).mapped(a, b)
    root = np.sqrt(w)
    values = np.asarray(kernel(x), dtype=float)
    if values.shape != (n, n):
        raise ParameterError(f"kernel returned shape {values.shape}, expected {(n, n)}")
    if not np.all(np.isfinite(values)):
        raise NonFiniteValueError(f"non-finite kernel value on ({a}, {b})")
    return np.eye(n) - root[:, None] * values * root[None, :]


def nystrom_det(
    kernel: Callable[[np.ndarray], np.ndarray], interval: tuple[float, float], n: int = DEFAULT_NODES
) -> DeterminantResult:
    """det(I - K) on L2(a, b) with n nodes; the estimate compares with 2n nodes.

    Args:
        kernel: maps the node vector to the kernel matrix
        interval: (a, b) with a < b
        n: number of nodes
    Returns:
        the value at n nodes and |det_n - det_2n|
    Raises:
        NonFiniteValueError: the kernel produced inf or nan
    """
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ParameterError(f"empty interval ({a}, {b})")
    value = pivoted_det(nystrom_matrix(kernel, a, b, n))
    refined = pivoted_det(nystrom_matrix(kernel, a, b, 2 * n))
    logger.debug("det on (%g, %g): n=%d %.15g, 2n %.15g", a, b, n, value, refined)
    return DeterminantResult(value, n, (a, b), abs(value - refined))
