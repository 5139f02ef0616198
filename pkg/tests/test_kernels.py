"""Numeric Airy, Bessel and transformed kernels and the K_j evaluation."""

from __future__ import annotations

import mpmath
import pytest

from edge_transition.errors import ParameterError
from edge_transition.expansion import assemble_kernel_expansion
from edge_transition.kernels import (
    AiryKernel,
    BesselKernel,
    ScalingParams,
    TransformedKernel,
    airy_kernel,
    bessel_kernel,
    expansion_partial_sum,
    kernel_correction_eval,
    transformed_kernel,
)
from edge_transition.kernels.kernels import DIAGONAL_BAND
from edge_transition.specfun import EvalContext

TOL = mpmath.mpf(2) ** -90


def _airy_pair(x):
    return mpmath.airyai(x), mpmath.airyai(x, derivative=1)


def _bessel_pair(nu, x):
    root = mpmath.sqrt(x)
    return mpmath.besselj(nu, root), root * mpmath.besselj(nu, root, derivative=1) / 2


@pytest.mark.parametrize(("x", "y"), [(0.5, -1.25), (-3.0, 2.0), (4.0, 4.5)])
def test_airy_kernel_off_the_diagonal(x, y, ctx):
    value = airy_kernel(x, y, ctx)
    with mpmath.workprec(200):
        (px, qx), (py, qy) = _airy_pair(mpmath.mpf(x)), _airy_pair(mpmath.mpf(y))
        assert abs(value - (px * qy - qx * py) / (x - y)) < TOL


@pytest.mark.parametrize("x", [-2.0, 0.0, 1.5])
def test_airy_kernel_on_the_diagonal(x, ctx):
    kernel = AiryKernel(ctx)
    with mpmath.workprec(200):
        ai, aip = _airy_pair(mpmath.mpf(x))
        expected = aip**2 - x * ai**2
        assert abs(kernel.diagonal(x) - expected) < TOL
        assert abs(kernel(x, x) - expected) < TOL


def test_airy_kernel_inside_the_band_matches_the_quotient(ctx):
    kernel = AiryKernel(ctx)
    x = mpmath.mpf("0.75")
    with mpmath.workprec(400):
        y = x + mpmath.mpf(kernel.band) / 2
        (px, qx), (py, qy) = _airy_pair(x), _airy_pair(y)
        expected = (px * qy - qx * py) / (x - y)
        assert abs(kernel(x, y) - expected) < TOL


@pytest.mark.parametrize(
    ("precision_bits", "target_bits", "band"),
    [(64, 24, DIAGONAL_BAND), (64, None, 2.0 ** -(32 / 3)), (128, None, 2.0**-32)],
)
def test_diagonal_band_shrinks_with_the_target(precision_bits, target_bits, band):
    kernel = AiryKernel(EvalContext(precision_bits=precision_bits, target_bits=target_bits))
    assert kernel.band == pytest.approx(band)
    assert kernel.band <= DIAGONAL_BAND

@pytest.mark.parametrize(("x", "y"), [(2.0, 9.0), (30.0, 12.5)])
def test_bessel_kernel_off_the_diagonal(x, y, ctx):
    nu = 3.5
    value = bessel_kernel(x, y, nu, ctx)
    with mpmath.workprec(200):
        (px, qx), (py, qy) = _bessel_pair(nu, mpmath.mpf(x)), _bessel_pair(nu, mpmath.mpf(y))
        assert abs(value - (px * qy - qx * py) / (x - y)) < TOL


def test_bessel_kernel_on_the_diagonal(ctx):
    nu, x = 2, mpmath.mpf(7)
    kernel = BesselKernel(nu, ctx)
    with mpmath.workprec(200):
        root = mpmath.sqrt(x)
        expected = (
            mpmath.besselj(nu, root) ** 2 - mpmath.besselj(nu + 1, root) * mpmath.besselj(nu - 1, root)
        ) / 4
        assert abs(kernel.diagonal(x) - expected) < TOL


def test_bessel_kernel_needs_positive_arguments(ctx):
    with pytest.raises(ParameterError):
        bessel_kernel(-1.0, 2.0, 1, ctx)


def test_transformed_kernel_definition(ctx):
    params = ScalingParams.from_nu(40, ctx)
    value = transformed_kernel(0.5, -1.0, params, ctx)
    with mpmath.workprec(200):
        direct = BesselKernel(40, ctx)(params.phi(0.5), params.phi(-1.0))
        weight = 2 * params.nu**2 * params.h * mpmath.sqrt((1 - params.h * 0.5) * (1 + params.h))
        assert abs(value - weight * direct) < mpmath.mpf(2) ** -80


def test_first_correction_at_the_origin(expansion2, ctx):
    with mpmath.workprec(200):
        ai0, aip0 = _airy_pair(mpmath.mpf(0))
        expected = mpmath.mpf(2) / 5 * ai0 * aip0
        assert abs(kernel_correction_eval(expansion2, 1, 0, 0, ctx) - expected) < TOL


def test_second_correction_at_a_mixed_point(expansion2, ctx):
    with mpmath.workprec(200):
        a1, b1 = _airy_pair(mpmath.mpf(1))
        am, bm = _airy_pair(mpmath.mpf(-1))
        expected = (56 * a1 * am - 357 * a1 * bm + 231 * b1 * am + 424 * b1 * bm) / 1400
        assert abs(kernel_correction_eval(expansion2, 2, 1, -1, ctx) - expected) < TOL


def test_correction_order_must_be_in_the_table(expansion2, ctx):
    with pytest.raises(ParameterError):
        kernel_correction_eval(expansion2, 3, 0, 0, ctx)


def test_partial_sums_approach_the_transformed_kernel(expansion2, ctx):
    params = ScalingParams.from_nu(200, ctx)
    airy = AiryKernel(ctx)
    exact = TransformedKernel(params, ctx)
    for x, y in ((0.0, 0.0), (1.0, -1.0)):
        target = exact(x, y)
        residuals = [abs(target - expansion_partial_sum(expansion2, m, x, y, params, ctx, airy)) for m in (0, 2)]
        assert residuals[1] < residuals[0] * 0.05


def test_empty_partial_sum_is_the_airy_kernel(expansion2, ctx):
    params = ScalingParams.from_nu(10, ctx)
    assert expansion_partial_sum(expansion2, 0, 0.5, 1.5, params, ctx) == airy_kernel(0.5, 1.5, ctx)


@pytest.mark.slow()
def test_third_correction_matches_the_bessel_residual(ctx):
    expansion = assemble_kernel_expansion(3)
    params = ScalingParams.from_nu(1000, ctx)
    airy = AiryKernel(ctx)
    x, y = 0.7, -0.4
    k3 = kernel_correction_eval(expansion, 3, x, y, ctx, airy)
    partial = expansion_partial_sum(expansion, 2, x, y, params, ctx, airy)
    residual = (TransformedKernel(params, ctx)(x, y) - partial) / params.h**3
    assert abs(k3 - mpmath.mpf("0.0032105")) < 1e-6
    assert abs(residual - k3) < 2e-5
