"""Airy function values against mpmath and scipy."""

from __future__ import annotations

import mpmath
import numpy as np
import pytest
from scipy import special

from edge_transition.errors import ParameterError, PrecisionExhaustedError
from edge_transition.specfun import EvalContext, airy_ai, airy_ai_array, airy_ai_complex, airy_ai_float
from edge_transition.specfun.airy import airy_decay_bound, airy_origin_values


def test_origin_values(ctx):
    ai0, aip0 = airy_origin_values(ctx)
    with mpmath.workprec(128):
        assert abs(ai0 - mpmath.mpf("0.35502805388781723926")) < 1e-19
        assert abs(aip0 + mpmath.mpf("0.25881940379280679840")) < 1e-19


@pytest.mark.parametrize("x", [-10.0, -1.5, 0.0, 2.25, 8.0, 30.0])
def test_real_values_meet_the_target(x, ctx):
    value = airy_ai(x, ctx)
    assert value.error_bound <= ctx.target_abs_error
    with mpmath.workprec(200):
        xm = mpmath.mpf(x)
        assert abs(value.ai - mpmath.airyai(xm)) < ctx.target_abs_error * 2
        assert abs(value.aip - mpmath.airyai(xm, derivative=1)) < ctx.target_abs_error * 2


def test_string_arguments_are_exact(fine_ctx):
    value = airy_ai("-2.1", fine_ctx)
    with mpmath.workprec(300):
        assert abs(value.ai - mpmath.airyai(mpmath.mpf("-2.1"))) < fine_ctx.target_abs_error * 2


def test_complex_values(ctx):
    value = airy_ai_complex(1 + 2j, ctx)
    with mpmath.workprec(200):
        z = mpmath.mpc(1, 2)
        assert abs(value.ai - mpmath.airyai(z)) < ctx.target_abs_error * 2
        assert abs(value.aip - mpmath.airyai(z, derivative=1)) < ctx.target_abs_error * 2


def test_float_helpers_match_scipy():
    xs = np.array([[-4.0, -0.5], [0.3, 3.0]])
    ai, aip = airy_ai_array(xs)
    ref_ai, ref_aip, _, _ = special.airy(xs)
    assert ai.shape == xs.shape
    np.testing.assert_allclose(ai, ref_ai, rtol=1e-12, atol=1e-15)
    np.testing.assert_allclose(aip, ref_aip, rtol=1e-12, atol=1e-15)
    assert airy_ai_float(1.0) == pytest.approx(tuple(special.airy(1.0)[:2]), rel=1e-13)


@pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
def test_decay_bound(x):
    with mpmath.workprec(100):
        assert mpmath.airyai(x) <= airy_decay_bound(x)


def test_decay_bound_domain():
    with pytest.raises(ParameterError):
        airy_decay_bound(0)


def test_argument_cap(ctx):
    with pytest.raises(ParameterError):
        airy_ai(50.5, ctx)


def test_precision_cap_is_reported():
    ctx = EvalContext(precision_bits=64, max_precision_bits=80)
    with pytest.raises(PrecisionExhaustedError) as info:
        airy_ai(-40, ctx)
    assert info.value.suggested_bits > 80
