"""Gauss-Legendre rules."""

from __future__ import annotations

import numpy as np
import pytest

from edge_transition.errors import ParameterError
from edge_transition.fredholm import gauss_legendre


def test_two_point_rule():
    rule = gauss_legendre(2)
    assert rule.n == 2
    np.testing.assert_allclose(rule.nodes, [-1 / np.sqrt(3), 1 / np.sqrt(3)], atol=1e-15)
    np.testing.assert_allclose(rule.weights, [1.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("n", [3, 17, 40, 200])
def test_weights_sum_to_the_interval_length(n):
    rule = gauss_legendre(n)
    assert rule.weights.sum() == pytest.approx(2.0, abs=1e-13)
    assert np.all(np.diff(rule.nodes) > 0)
    assert -1 < rule.nodes[0] and rule.nodes[-1] < 1


def test_exact_for_polynomials_up_to_degree_2n_minus_1():
    assert gauss_legendre(3).integrate(lambda x: x**4) == pytest.approx(2 / 5, abs=1e-15)
    assert gauss_legendre(3).integrate(lambda x: x**5 + x**2) == pytest.approx(2 / 3, abs=1e-15)


def test_mapped_interval():
    rule = gauss_legendre(20)
    assert rule.integrate(np.exp, 0.0, 1.0) == pytest.approx(np.e - 1, rel=1e-14)
    x, w = rule.mapped(2.0, 5.0)
    assert w.sum() == pytest.approx(3.0)
    assert 2.0 < x.min() and x.max() < 5.0


@pytest.mark.parametrize("n", [1, 401])
def test_node_count_range(n):
    with pytest.raises(ParameterError):
        gauss_legendre(n)
