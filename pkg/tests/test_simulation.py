"""Tests für Treiber und Euler-Simulation."""

import math

import numpy as np
import pytest
from scipy import stats

from stable_cir import ModelParams, ParameterError
from stable_cir.config import SimulationConfig
from stable_cir.core.simulation import (StableDriverSpec, draw_increments, empirical_atom,
                                        ensemble_rows, laplace_exponent_from_levy_measure,
                                        path_streams, record_schedule, sample_stable_increment,
                                        simulate_pair, summary_rows)
from stable_cir.core.transforms import atom_probability, laplace_y, mean_x, mean_y


# ========== Treiber ==========

def test_driver_rejects_alpha_outside_range():
    with pytest.raises(ParameterError):
        StableDriverSpec(2.0)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_levy_measure_reproduces_laplace_exponent(alpha):
    for lam in (0.5, 1.0, 3.0):
        numeric = laplace_exponent_from_levy_measure(lam, alpha)
        assert numeric == pytest.approx(StableDriverSpec(alpha).laplace_exponent(lam), rel=1e-5)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
@pytest.mark.parametrize("lam", [0.5, 1.0])
def test_driver_laplace_transform_matches_exponent(alpha, lam):
    driver = StableDriverSpec(alpha)
    rng = np.random.default_rng(2024)
    values = np.exp(-lam * driver.sample(1.0, rng, 1_000_000))
    standard_error = values.std(ddof=1) / math.sqrt(len(values))
    assert abs(values.mean() - math.exp(lam ** alpha / alpha)) <= 3.0 * standard_error


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_driver_is_self_similar(alpha):
    driver = StableDriverSpec(alpha)
    long_step = driver.sample(4.0, np.random.default_rng(31), 100_000)
    unit_step = driver.sample(1.0, np.random.default_rng(32), 100_000)
    assert stats.ks_2samp(long_step, 4.0 ** (1.0 / alpha) * unit_step).pvalue > 0.01


def test_jumps_and_gaussian_noise_are_uncorrelated():
    streams = [path_streams(17, path) for path in range(2000)]
    jumps, noise = draw_increments(streams, StableDriverSpec(1.5), 0.01, 50)
    assert jumps.shape == noise.shape == (50, 2000)
    correlation = np.corrcoef(jumps.ravel(), noise.ravel())[0, 1]
    assert abs(correlation) < 3.0 / math.sqrt(jumps.size)


def test_driver_increments_are_centered():
    driver = StableDriverSpec(1.8)
    rng = np.random.default_rng(5)
    sample = driver.sample(0.5, rng, 200_000)
    assert abs(sample.mean()) < 0.02


def test_single_increment_is_a_float():
    value = sample_stable_increment(0.01, 1.5, np.random.default_rng(1))
    assert isinstance(value, float)
    with pytest.raises(ParameterError):
        sample_stable_increment(0.0, 1.5, np.random.default_rng(1))


# ========== Aufzeichnung ==========

def test_record_schedule_always_contains_ends():
    assert record_schedule(10, 0.1, 0).tolist() == [0, 10]
    assert record_schedule(10, 0.1, 4).tolist() == [0, 4, 8, 10]
    assert record_schedule(10, 0.1, record_times=[0.5]).tolist() == [0, 5, 10]


def test_record_times_outside_horizon_are_rejected():
    with pytest.raises(ParameterError):
        record_schedule(10, 0.1, record_times=[2.0])


# ========== Simulation ==========

def test_simulation_is_deterministic(params):
    first = simulate_pair(1.0, 0.0, 1.0, 0.01, 300, 11, params, record_stride=10)
    second = simulate_pair(1.0, 0.0, 1.0, 0.01, 300, 11, params, record_stride=10)
    assert np.array_equal(first.y_paths, second.y_paths)
    assert np.array_equal(first.x_paths, second.x_paths)
    assert first.times.tolist() == pytest.approx([0.1 * k for k in range(11)])


def test_different_seeds_give_different_paths(params):
    first = simulate_pair(1.0, 0.0, 0.5, 0.01, 50, 1, params)
    second = simulate_pair(1.0, 0.0, 0.5, 0.01, 50, 2, params)
    assert not np.array_equal(first.terminal_y, second.terminal_y)


def test_worker_count_does_not_change_paths(params):
    serial = simulate_pair(1.0, 0.5, 0.5, 0.01, 1000, 3, params, record_stride=0,
                           block_size=128, workers=1)
    parallel = simulate_pair(1.0, 0.5, 0.5, 0.01, 1000, 3, params, record_stride=0,
                             block_size=128, workers=4)
    assert np.array_equal(serial.y_paths, parallel.y_paths)
    assert np.array_equal(serial.x_paths, parallel.x_paths)


def test_path_does_not_depend_on_ensemble_size_or_blocking(params):
    small = simulate_pair(1.0, 0.5, 0.5, 0.01, 10, 3, params, record_stride=5, block_size=4096)
    large = simulate_pair(1.0, 0.5, 0.5, 0.01, 20, 3, params, record_stride=5, block_size=5)
    np.testing.assert_allclose(large.y_paths[:10], small.y_paths, rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(large.x_paths[:10], small.x_paths, rtol=1e-10, atol=1e-12)
    assert not np.allclose(large.y_paths[10:], small.y_paths)


def test_paths_stay_nonnegative(params):
    ensemble = simulate_pair(0.05, 0.0, 1.0, 0.01, 2000, 9, params, record_stride=1)
    assert np.all(ensemble.y_paths >= 0.0)
    assert ensemble.n_projections >= 0
    assert ensemble.horizon == pytest.approx(1.0)


def test_drift_overshoot_is_rejected():
    params = ModelParams(a=1.0, b=20.0, alpha=1.5)
    with pytest.raises(ParameterError, match="1 - b\\*dt"):
        simulate_pair(1.0, 0.0, 1.0, 0.1, 10, 1, params)


@pytest.mark.parametrize("kwargs", [
    {"y0": -1.0},
    {"dt": 2.0},
    {"n_paths": 0},
    {"seed": -1},
])
def test_invalid_arguments_are_rejected(params, kwargs):
    arguments = {"y0": 1.0, "x0": 0.0, "horizon": 1.0, "dt": 0.01, "n_paths": 10, "seed": 1}
    arguments.update(kwargs)
    with pytest.raises(ParameterError):
        simulate_pair(params=params, **arguments)


def test_rows_follow_the_recorded_grid(params):
    ensemble = simulate_pair(1.0, 0.0, 0.1, 0.01, 3, 4, params, record_stride=5)
    rows = ensemble_rows(ensemble)
    assert len(rows) == 3 * 3
    assert rows[0][:3] == [0, 0, 0.0]
    assert rows[-1][:2] == [2, 10]

    summary = summary_rows(ensemble)
    assert [row[0] for row in summary] == pytest.approx([0.0, 0.05, 0.1])
    assert summary[0][1:] == [1.0, 0.0, 0.0]


def test_atom_estimator_requires_no_immigration(params):
    ensemble = simulate_pair(1.0, 0.0, 0.1, 0.01, 10, 1, params)
    with pytest.raises(ParameterError):
        empirical_atom(ensemble, 1e-6)


@pytest.mark.slow
def test_ensemble_means_match_closed_form():
    params = ModelParams(a=1.0, b=1.0, alpha=1.8, m=0.5, theta=1.0)
    ensemble = simulate_pair(2.0, 1.0, 1.0, 1e-3, 20_000, 42, params, record_stride=0)
    assert ensemble.terminal_y.mean() == pytest.approx(mean_y(1.0, 2.0, params), rel=0.05)
    assert ensemble.terminal_x.mean() == pytest.approx(mean_x(1.0, 1.0, params), abs=0.03)


@pytest.mark.slow
def test_empirical_atom_improves_with_smaller_steps():
    params = ModelParams(a=0.0, b=1.0, alpha=1.5)
    expected = atom_probability(1.0, 1.0, params)
    errors = []
    for dt in (1e-2, 1e-3):
        ensemble = simulate_pair(1.0, 0.0, 1.0, dt, 100_000, 42, params, record_stride=0,
                                 workers=2)
        errors.append(abs(empirical_atom(ensemble, 1e-6) - expected))
    assert errors[1] < 0.5 * expected
    assert errors[1] < errors[0]


@pytest.mark.slow
def test_simulated_laplace_transform_matches_closed_form(quad):
    params = ModelParams(a=1.0, b=1.0, alpha=1.5)
    sim = SimulationConfig(bias_coefficient=1.0, bias_order=0.5)
    lambdas = (0.5, 1.0, 2.0)
    exact = [laplace_y(1.0, 1.0, lam, params, quad) for lam in lambdas]
    deviations = []
    for dt in (1e-2, 1e-3):
        ensemble = simulate_pair(1.0, 0.0, 1.0, dt, 100_000, 99, params, record_stride=0,
                                 workers=2)
        row = []
        for lam, value in zip(lambdas, exact):
            sample = np.exp(-lam * ensemble.terminal_y)
            standard_error = sample.std(ddof=1) / math.sqrt(len(sample))
            deviation = float(sample.mean()) - value
            assert abs(deviation) <= 3.0 * standard_error + sim.bias_allowance(dt)
            row.append((deviation, standard_error))
        deviations.append(row)
    for (coarse, _), (fine, standard_error) in zip(*deviations):
        assert abs(fine) <= abs(coarse) + 2.0 * standard_error
