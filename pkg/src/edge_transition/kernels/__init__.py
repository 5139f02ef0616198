"""Numeric kernels, the phase function, the Airy parametrix and residual scans."""

from edge_transition.kernels.kernels import (
    AiryKernel,
    BesselKernel,
    TransformedKernel,
    airy_kernel,
    bessel_kernel,
    expansion_partial_sum,
    kernel_correction_eval,
    transformed_kernel,
)
from edge_transition.kernels.parametrix import airy_parametrix, asymptotic_residual, check_parametrix
from edge_transition.kernels.phase import f_eval, g_eval
from edge_transition.kernels.residuals import ResidualGrid, parse_grid, residual_scan
from edge_transition.kernels.scaling import ScalingParams

__all__ = [
    "AiryKernel",
    "BesselKernel",
    "ResidualGrid",
    "ScalingParams",
    "TransformedKernel",
    "airy_kernel",
    "airy_parametrix",
    "asymptotic_residual",
    "bessel_kernel",
    "check_parametrix",
    "expansion_partial_sum",
    "f_eval",
    "g_eval",
    "kernel_correction_eval",
    "parse_grid",
    "residual_scan",
    "transformed_kernel",
]
