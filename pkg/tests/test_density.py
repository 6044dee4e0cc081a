"""Tests für Übergangsdichte und Verteilungsfunktion."""

import numpy as np
import pytest
from scipy.integrate import trapezoid

from stable_cir import ModelParams, ParameterError, QuadratureError, Representation
from stable_cir.config import QuadratureConfig
from stable_cir.core.density import (cdf_rows, cdf_values, cdf_y, charfn_envelope,
                                     choose_xi_truncation, density_fourier, density_grid,
                                     density_real_axis, density_rows, envelope_tail)
from stable_cir.core.simulation import simulate_pair
from stable_cir.core.transforms import mean_y


def test_density_requires_immigration(loose_quad):
    params = ModelParams(a=0.0)
    with pytest.raises(ParameterError, match="a > 0"):
        density_fourier(1.0, 1.0, 1.0, params, loose_quad)


def test_real_axis_requires_start_at_zero(params, loose_quad):
    with pytest.raises(ParameterError, match="y0 = 0"):
        density_real_axis(1.0, 1.0, 1.0, params, loose_quad)


def test_density_rejects_negative_abscissa(params, loose_quad):
    with pytest.raises(ParameterError):
        density_grid(1.0, 1.0, [-1.0, 0.0, 1.0], params, loose_quad)


def test_envelope_decays(params, loose_quad):
    fit = charfn_envelope(1.0, 1.0, params, loose_quad)
    assert fit.c2 > 0.0
    assert fit.exponent == pytest.approx(2.0 - params.alpha)
    assert envelope_tail(fit, 10.0) > envelope_tail(fit, 100.0) > 0.0


def test_automatic_cutoff_meets_tolerance(params, loose_quad):
    fit = choose_xi_truncation(1.0, 1.0, params, loose_quad)
    assert fit.auto
    assert fit.tail_estimate < loose_quad.abs_tol


def test_explicit_cutoff_too_small_is_rejected(params):
    quad = QuadratureConfig(abs_tol=1e-7, rel_tol=1e-7, xi_truncation=1.0)
    with pytest.raises(QuadratureError):
        choose_xi_truncation(1.0, 1.0, params, quad)


def test_cdf_is_zero_at_origin_and_monotone(params, loose_quad):
    assert cdf_y(1.0, 1.0, 0.0, params, loose_quad) == 0.0
    xs = np.linspace(0.25, 10.0, 12)
    values, error = cdf_values(1.0, 1.0, xs, params, loose_quad)
    assert np.all((values >= 0.0) & (values <= 1.0))
    assert np.all(np.diff(values) >= -1e-6)
    assert error < 1e-4
    assert cdf_rows(xs, values)[0] == [0.25, float(values[0])]


@pytest.mark.slow
def test_fourier_and_real_axis_agree(params, quad):
    xs = np.linspace(0.1, 10.0, 34)
    fourier = density_grid(1.0, 0.0, xs, params, quad, Representation.FOURIER)
    real_axis = density_grid(1.0, 0.0, xs, params, quad, Representation.REAL_AXIS)
    assert np.max(np.abs(fourier.values - real_axis.values)) < 1e-6
    assert np.all(fourier.values > 0.0)


@pytest.mark.slow
@pytest.mark.parametrize("y0", [0.0, 1.0])
def test_density_grid_is_normalized(params, quad, y0):
    xs = np.linspace(0.0, 20.0, 512)
    grid = density_grid(1.0, y0, xs, params, quad)
    assert grid.boundary_flag
    assert grid.head_mass == 0.0
    assert 0.0 < grid.tail_mass < 0.05
    assert grid.norm_defect < 1e-4
    assert grid.min_interior > 0.0

    rows = density_rows(grid)
    assert len(rows) == len(xs)
    assert rows[1][2] == "fourier"


@pytest.mark.slow
def test_simulated_histogram_matches_distribution(params, loose_quad):
    n_paths = 100_000
    ensemble = simulate_pair(1.0, 0.0, 1.0, 1e-3, n_paths, 23, params, record_stride=0,
                             workers=2)
    edges = np.linspace(0.0, 8.0, 41)
    counts, _ = np.histogram(ensemble.terminal_y, bins=edges)
    cdf, _ = cdf_values(1.0, 1.0, edges[1:], params, loose_quad)
    probabilities = np.diff(np.concatenate(([0.0], cdf)))
    expected = n_paths * probabilities
    sigma = np.sqrt(n_paths * probabilities * (1.0 - probabilities))
    occupied = counts > 0
    within = np.abs(counts - expected)[occupied] <= 4.0 * sigma[occupied]
    assert occupied.sum() >= 30
    assert within.mean() >= 0.95


@pytest.mark.slow
def test_density_integrates_to_the_cdf(params, loose_quad):
    xs = np.linspace(0.5, 3.0, 51)
    grid = density_grid(1.0, 1.0, xs, params, loose_quad)
    edges, _ = cdf_values(1.0, 1.0, [0.5, 3.0], params, loose_quad)
    mass = trapezoid(grid.values, x=xs)
    assert mass == pytest.approx(edges[1] - edges[0], abs=2e-3)


@pytest.mark.slow
def test_first_moment_tracks_the_mean(params, loose_quad):
    # Restmasse jenseits von x = 40 trägt wenige Prozent zum Moment bei
    xs = np.linspace(0.0, 40.0, 401)
    grid = density_grid(1.0, 1.0, xs, params, loose_quad)
    assert grid.first_moment() == pytest.approx(mean_y(1.0, 1.0, params), rel=0.08)


@pytest.mark.slow
def test_heavy_tail_density_is_small_but_positive(params):
    quad = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-8)
    grid = density_grid(1.0, 0.0, [2000.0], params, quad, Representation.REAL_AXIS)
    value = float(grid.values[0])
    assert 1e-11 < value < 1e-7


@pytest.mark.slow
def test_density_is_jointly_continuous(params, loose_quad):
    base = (1.0, 1.0, 1.0)
    center = density_fourier(*base, params, loose_quad)
    for axis in range(3):
        moduli = []
        for step in (1e-2, 5e-3):
            shifted = list(base)
            shifted[axis] += step
            moduli.append(abs(density_fourier(*shifted, params, loose_quad) - center) / step)
        assert max(moduli) < 10.0
        assert moduli[1] == pytest.approx(moduli[0], rel=0.5, abs=1e-3)
