"""Gauss-Legendre quadrature and Fredholm determinants for the edge distributions."""

from edge_transition.fredholm.determinant import DeterminantResult, nystrom_det
from edge_transition.fredholm.distributions import (
    TransitionReport,
    airy_trace_tail,
    e2_hard,
    tracy_widom_F,
    transition_study,
)
from edge_transition.fredholm.quadrature import QuadratureRule, gauss_legendre

__all__ = [
    "DeterminantResult",
    "QuadratureRule",
    "TransitionReport",
    "airy_trace_tail",
    "e2_hard",
    "gauss_legendre",
    "nystrom_det",
    "tracy_widom_F",
    "transition_study",
]
