"""Grids, slope fits and the weighted residual scan."""

from __future__ import annotations

import pytest

from edge_transition.errors import ParameterError, PrecisionExhaustedError
from edge_transition.kernels import ScalingParams, parse_grid, residual_scan
from edge_transition.kernels.residuals import DEFAULT_GRID, check_grid, fit_slope, parse_axis
from edge_transition.specfun import EvalContext


def test_parse_axis():
    assert parse_axis("0:1:3") == [0.0, 0.5, 1.0]
    assert parse_axis("5:9:1") == [5.0]


@pytest.mark.parametrize("text", ["0:1", "a:b:3", "0:1:0", "0:1:2.5"])
def test_parse_axis_rejects(text):
    with pytest.raises(ParameterError):
        parse_axis(text)


def test_parse_grid():
    points = parse_grid(DEFAULT_GRID)
    assert len(points) == 81
    assert points[0] == (-2.0, -2.0)
    assert points[-1] == (6.0, 6.0)
    with pytest.raises(ParameterError):
        parse_grid("0:1:2")


def test_fit_slope():
    hs = [0.1, 0.05, 0.025, 0.0125]
    assert fit_slope(hs, [3 * h**2 for h in hs]) == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        fit_slope(hs[:2], [1.0, 2.0])
    with pytest.raises(ParameterError):
        fit_slope(hs[:3], [1.0, 0.0, 2.0])


def test_check_grid(ctx):
    params = ScalingParams.from_nu(100, ctx)
    check_grid([(-2.0, 6.0)], params, 0.75)
    with pytest.raises(ParameterError):
        check_grid([(-2.5, 0.0)], params, 0.75)
    with pytest.raises(ParameterError):
        check_grid([(0.0, 50.0)], params, 0.75)


def test_scan_argument_errors(expansion2, ctx):
    points = [(0.0, 0.0)]
    with pytest.raises(ParameterError):
        residual_scan([100, 200], points, 1, expansion2, ctx)
    with pytest.raises(ParameterError):
        residual_scan([100, 200, 400], points, 3, expansion2, ctx)
    with pytest.raises(ParameterError):
        residual_scan([100, 200, 400], [], 1, expansion2, ctx)


def test_small_scan(expansion2, ctx):
    grid = residual_scan([400, 100, 200], [(0.0, 0.0), (1.0, -1.0)], 1, expansion2, ctx)
    assert grid.nus == [100.0, 200.0, 400.0]
    assert grid.hs[0] > grid.hs[1] > grid.hs[2]
    for k in (0, 1):
        assert grid.residuals[k][0] > grid.residuals[k][2]
        assert grid.slopes[k] == pytest.approx(k + 1, abs=0.3)
    frame = grid.to_frame()
    assert list(frame.columns) == ["nu", "h", "m", "max_residual", "slope"]
    assert len(frame) == 6
    assert set(frame["m"]) == {0, 1}


def test_unresolved_residual_is_reported(expansion2):
    coarse = EvalContext(precision_bits=64)
    with pytest.raises(PrecisionExhaustedError):
        residual_scan([1000, 1100, 1200], [(0.0, 0.0)], 2, expansion2, coarse)


@pytest.mark.slow()
def test_default_grid_slopes(expansion2):
    ctx = EvalContext(precision_bits=256)
    grid = residual_scan([50, 100, 200, 400], parse_grid(DEFAULT_GRID), 2, expansion2, ctx)
    for k in range(3):
        assert grid.slopes[k] == pytest.approx(k + 1, abs=0.15)
