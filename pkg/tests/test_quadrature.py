"""Tests für die vektorisierte adaptive Quadratur."""

import math

import numpy as np
import pytest

from stable_cir import ParameterError, QuadratureError
from stable_cir.config import QuadratureConfig
from stable_cir.core.quadrature import gauss_legendre_rule, geometric_breakpoints, integrate


def test_gauss_weights_integrate_constants():
    nodes, weights = gauss_legendre_rule(10)
    assert len(nodes) == 10
    assert weights.sum() == pytest.approx(2.0, rel=1e-14)


def test_geometric_breakpoints_refine_towards_lower_end():
    edges = geometric_breakpoints(0.0, 1.0, 3)
    assert np.allclose(edges, [0.0, 0.125, 0.25, 0.5, 1.0])


def test_scalar_integrand(quad):
    result = integrate(np.sin, np.array([0.0, math.pi]), quad)
    assert float(result.values) == pytest.approx(2.0, abs=1e-12)
    assert result.error_estimate <= quad.abs_tol * 10


def test_vector_integrand(quad):
    def integrand(s):
        return np.vstack([s ** 2, np.exp(s)])

    result = integrate(integrand, np.array([0.0, 0.5, 1.0]), quad)
    assert result.values.shape == (2,)
    assert np.allclose(result.values, [1.0 / 3.0, math.e - 1.0], rtol=1e-12)


def test_oscillating_integrand_is_refined(quad):
    result = integrate(lambda s: np.cos(40.0 * s), np.array([0.0, 1.0]), quad)
    assert float(result.values) == pytest.approx(math.sin(40.0) / 40.0, abs=1e-10)
    assert result.n_panels > 1


def test_batch_size_does_not_change_result(quad):
    edges = np.linspace(0.0, 3.0, 40)
    large = integrate(np.exp, edges, quad)
    small = integrate(np.exp, edges, quad, batch_points=64)
    assert float(large.values) == float(small.values)


def test_budget_exhaustion_reports_error_estimate():
    quad = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=3)
    with pytest.raises(QuadratureError) as info:
        integrate(lambda s: s ** -0.5, np.array([0.0, 1.0]), quad)
    assert info.value.error_estimate > 0.0
    assert info.value.exit_code == 3


def test_non_finite_integrand_is_reported(quad):
    with pytest.raises(QuadratureError):
        integrate(lambda s: np.full_like(s, np.nan), np.array([0.0, 1.0]), quad)


@pytest.mark.parametrize("edges", [[0.0], [1.0, 1.0], [1.0, 0.0]])
def test_breakpoints_must_increase(quad, edges):
    with pytest.raises(ParameterError):
        integrate(np.sin, np.array(edges), quad)
