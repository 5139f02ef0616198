"""Tracy-Widom F, the hard-edge gap probability and the transition study."""

from __future__ import annotations

import numpy as np
import pytest

from edge_transition.errors import ParameterError
from edge_transition.fredholm import airy_trace_tail, e2_hard, tracy_widom_F, transition_study
from edge_transition.fredholm.distributions import integrable_matrix, truncation_point


def test_truncation_point():
    assert truncation_point(-20.0) == 12.0
    assert truncation_point(0.0) == 25.0


def test_tail_bound():
    assert airy_trace_tail(12.0) < 1e-14
    assert airy_trace_tail(2.0) > 1e-14
    with pytest.raises(ParameterError):
        airy_trace_tail(0.0)


def test_integrable_matrix_diagonal():
    x = np.array([0.0, 1.0, 2.0])
    matrix = integrable_matrix(x, x, np.ones(3), np.array([7.0, 8.0, 9.0]))
    np.testing.assert_allclose(np.diag(matrix), [7.0, 8.0, 9.0])
    assert matrix[0, 1] == pytest.approx(1.0)


def test_tracy_widom_tails():
    assert 1 - 1e-9 <= tracy_widom_F(8.0).value <= 1 + 1e-12
    assert tracy_widom_F(-8.0).value <= 1e-6


def test_tracy_widom_reference_value():
    result = tracy_widom_F(-2.0)
    assert result.value == pytest.approx(0.413224, abs=1e-4)
    assert result.error_estimate < 1e-8


def test_tracy_widom_is_insensitive_to_the_truncation():
    base = tracy_widom_F(-1.0)
    longer = tracy_widom_F(-1.0, 80, upper=2 * base.truncation)
    assert base.value == pytest.approx(longer.value, abs=1e-10)


def test_tracy_widom_domain():
    with pytest.raises(ParameterError):
        tracy_widom_F(10.5)
    with pytest.raises(ParameterError):
        tracy_widom_F(0.0, upper=2.0)


def test_hard_gap_near_zero_is_one():
    assert e2_hard(1e-8, 10).value == pytest.approx(1.0, abs=1e-9)


def test_hard_gap_decreases_in_s():
    values = [e2_hard(s, 2).value for s in (1.0, 4.0, 9.0)]
    assert values[0] > values[1] > values[2] > 0


def test_hard_gap_order_zero():
    small = e2_hard(0.01, 0).value
    # 1 - s/4 to first order
    assert small == pytest.approx(1 - 0.0025, abs=1e-4)
    assert 0 < e2_hard(4.0, 0).value < small


def test_hard_gap_in_the_transformed_chart_is_accurate():
    assert e2_hard(1e4, 100).error_estimate < 1e-9


def test_hard_gap_domain():
    with pytest.raises(ParameterError):
        e2_hard(0.0, 1)
    with pytest.raises(ParameterError):
        e2_hard(1.0, 401)
    with pytest.raises(ParameterError):
        e2_hard(1.0, -1)


def test_study_needs_positive_orders():
    with pytest.raises(ParameterError):
        transition_study(0.0, [])
    with pytest.raises(ParameterError):
        transition_study(0.0, [0, 10])


def test_two_orders_give_no_slope():
    report = transition_study(-1.0, [100, 50])
    assert report.nus == [50.0, 100.0]
    assert report.slope is None
    assert report.diffs[1] < report.diffs[0]
    frame = report.to_frame()
    assert list(frame.columns) == ["t", "nu", "h", "E2", "F", "diff", "slope"]
    assert len(frame) == 2


@pytest.mark.slow()
@pytest.mark.parametrize("t", [-2.0, 0.0, 2.0])
def test_gap_difference_decays_linearly_in_h(t):
    report = transition_study(t, [50, 100, 200, 400])
    assert report.slope == pytest.approx(1.0, abs=0.1)
