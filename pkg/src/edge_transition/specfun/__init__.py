"""Arbitrary-precision Airy, Bessel and gamma functions."""

from edge_transition.specfun.airy import AiryValue, airy_ai, airy_ai_array, airy_ai_complex, airy_ai_float
from edge_transition.specfun.bessel import BesselValue, bessel_j, bessel_j_float
from edge_transition.specfun.context import FLOAT_CONTEXT, EvalContext
from edge_transition.specfun.gamma import gamma

__all__ = [
    "FLOAT_CONTEXT",
    "AiryValue",
    "BesselValue",
    "EvalContext",
    "airy_ai",
    "airy_ai_array",
    "airy_ai_complex",
    "airy_ai_float",
    "bessel_j",
    "bessel_j_float",
    "gamma",
]
