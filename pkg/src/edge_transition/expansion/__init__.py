"""Exact derivation of the correction kernels K_j of the hard-to-soft edge transition."""

from edge_transition.expansion.airy_polys import airy_asymp_coeffs, airy_derivative_polys, lemma_identity_check
from edge_transition.expansion.assembly import (
    KernelExpansion,
    a_coeffs,
    assemble_kernel_expansion,
    prefactor_series,
    reduced_a_coeffs,
)
from edge_transition.expansion.conformal import e_factor_series, f_series, p_coeffs, scaled_f_series
from edge_transition.expansion.emit import OutputFormat, anchor_report, emit_anchors, emit_expansion
from edge_transition.expansion.riemann_hilbert import BranchConvention, j_matrix_series, r_outer_inner
from edge_transition.expansion.sandwich import SandwichExpansion, sandwich_series

__all__ = [
    "BranchConvention",
    "KernelExpansion",
    "OutputFormat",
    "SandwichExpansion",
    "a_coeffs",
    "airy_asymp_coeffs",
    "airy_derivative_polys",
    "anchor_report",
    "assemble_kernel_expansion",
    "e_factor_series",
    "emit_anchors",
    "emit_expansion",
    "f_series",
    "j_matrix_series",
    "lemma_identity_check",
    "p_coeffs",
    "prefactor_series",
    "r_outer_inner",
    "reduced_a_coeffs",
    "sandwich_series",
    "scaled_f_series",
]
