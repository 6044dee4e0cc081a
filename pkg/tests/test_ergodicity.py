"""Tests für Lyapunov-Funktion, Driftzertifikat, TV-Abfall und Strahlexponenten."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stable_cir import ModelParams, ParameterError
from stable_cir.config import QuadratureConfig, SimulationConfig
from stable_cir.core.ergodicity import (SUP_H_SECOND, bounds_rows, certify_grid, choose_beta_c_M,
                                        drift_mc_check, drift_rows, generator_numeric,
                                        generator_on_V, h_first, h_second, h_value, histogram_tv,
                                        levy_jump_term, lyapunov_value, mollifier, ray_exponent_check,
                                        ray_regime, truncation_leakage, tv_decay, tv_rows)


# ========== Mollifier und h ==========

def test_mollifier_interpolates_between_zero_and_one():
    assert mollifier(1.0) == 0.0
    assert mollifier(2.0) == 1.0
    assert mollifier(1.5) == pytest.approx(0.5)
    assert np.all(np.diff(mollifier(np.linspace(0.0, 3.0, 301))) >= 0.0)


def test_h_is_smooth_version_of_absolute_value():
    assert h_value(0.0) == pytest.approx(1.5)
    assert h_value(2.0) == pytest.approx(2.0)
    assert h_value(-7.0) == pytest.approx(7.0)
    assert h_first(2.5) == 1.0 and h_first(-2.5) == -1.0
    assert h_second(0.5) == 0.0
    assert float(np.max(h_second(np.linspace(-3.0, 3.0, 601)))) == pytest.approx(SUP_H_SECOND)


def test_h_derivatives_match_finite_differences():
    xs = np.linspace(-3.0, 3.0, 61)
    step = 1e-6
    numeric_first = (h_value(xs + step) - h_value(xs - step)) / (2 * step)
    numeric_second = (h_first(xs + step) - h_first(xs - step)) / (2 * step)
    assert np.allclose(numeric_first, h_first(xs), atol=1e-6)
    assert np.allclose(numeric_second, h_second(xs), atol=1e-5)


# ========== Generator und Zertifikat ==========

# Quadraturrauschen des numerischen Sprungintegrals
JUMP_QUAD_TOL = 1e-6


@pytest.mark.parametrize("y, x", [(0.0, 0.0), (3.0, 0.0), (2.0, 1.3), (7.5, -1.7), (0.4, 2.5)])
def test_generator_matches_finite_differences_of_V(params, y, x):
    spec = choose_beta_c_M(params)
    step = 1e-4
    d_y = (lyapunov_value(y + step, x, spec) - lyapunov_value(y - step, x, spec)) / (2 * step)
    d_x = (lyapunov_value(y, x + step, spec) - lyapunov_value(y, x - step, spec)) / (2 * step)
    step_xx = 1e-3
    d_xx = (lyapunov_value(y, x + step_xx, spec) - 2 * lyapunov_value(y, x, spec)
            + lyapunov_value(y, x - step_xx, spec)) / step_xx ** 2
    local = ((params.a - params.b * y) * d_y + (params.m - params.theta * x) * d_x
             + 0.5 * y * d_xx)
    assert generator_on_V(y, x, spec, params) == pytest.approx(float(local), rel=1e-5, abs=1e-5)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
@pytest.mark.parametrize("lam", [0.5, 1.0, 3.0])
def test_levy_jump_term_on_exponential(alpha, lam):
    # int (e^{-lam z} - 1 + lam z) C_alpha z^{-1-alpha} dz = lam^alpha / alpha
    y = 2.0
    value = levy_jump_term(lambda u: math.exp(-lam * u), -lam * math.exp(-lam * y),
                           lam ** 2 * math.exp(-lam * y), y, alpha)
    assert value == pytest.approx(y * math.exp(-lam * y) * lam ** alpha / alpha, rel=1e-4)


def test_levy_jump_term_vanishes_on_affine_functions():
    value = levy_jump_term(lambda u: 3.0 * u - 1.0, 3.0, 0.0, 5.0, 1.5, breakpoints=(10.0, 1e6))
    assert abs(value) < JUMP_QUAD_TOL


@pytest.mark.parametrize("y", [0.5, 5.0, 40.0])
@pytest.mark.parametrize("x", [-3.0, 0.3, 1.5])
def test_numeric_generator_reproduces_closed_form(params, y, x):
    spec = choose_beta_c_M(params)
    total, jump = generator_numeric(y, x, spec, params)
    assert abs(jump) < JUMP_QUAD_TOL
    assert total == pytest.approx(generator_on_V(y, x, spec, params), abs=JUMP_QUAD_TOL)


def test_reference_constants(params):
    spec = choose_beta_c_M(params)
    assert spec.c == pytest.approx(0.5)
    assert spec.beta >= SUP_H_SECOND / params.b
    assert certify_grid(spec, params).passed


@given(a=st.floats(0.0, 3.0), b=st.floats(0.2, 3.0), alpha=st.floats(1.05, 1.95),
       m=st.floats(-2.0, 2.0), theta=st.floats(0.1, 3.0))
def test_certificate_holds_for_all_valid_parameters(a, b, alpha, m, theta):
    params = ModelParams(a=a, b=b, alpha=alpha, m=m, theta=theta)
    spec = choose_beta_c_M(params)
    certificate = certify_grid(spec, params, n_points=60)
    assert certificate.passed, certificate


def test_ergodic_constants_need_reverting_factor():
    with pytest.raises(ParameterError, match="theta > 0"):
        choose_beta_c_M(ModelParams(theta=0.0))


def test_drift_bound_holds_pointwise(params):
    spec = choose_beta_c_M(params)
    ys = np.linspace(0.0, 100.0, 41)
    xs = np.linspace(-100.0, 100.0, 41)
    yy, xx = np.meshgrid(ys, xs, indexing="ij")
    drift = generator_on_V(yy, xx, spec, params)
    assert np.all(drift <= -spec.c * lyapunov_value(yy, xx, spec) + spec.M + 1e-12)


@pytest.mark.parametrize("y, truncation", [(5.0, 1e24), (5.0, 100.0), (40.0, 100.0)])
def test_jump_leakage_is_bounded(params, y, truncation):
    spec = choose_beta_c_M(params)
    total, jump = generator_numeric(y, 0.3, spec, params, truncation)
    assert jump <= JUMP_QUAD_TOL
    assert abs(jump) <= truncation_leakage(y, spec, params, truncation) + JUMP_QUAD_TOL
    assert total == pytest.approx(generator_on_V(y, 0.3, spec, params) + jump)


def test_jump_leakage_is_visible_close_to_truncation(params):
    spec = choose_beta_c_M(params)
    _, jump = generator_numeric(40.0, 0.3, spec, params, truncation=100.0)
    assert jump < -10 * JUMP_QUAD_TOL


def test_numeric_generator_requires_inactive_truncation(params):
    spec = choose_beta_c_M(params)
    with pytest.raises(ParameterError):
        generator_numeric(200.0, 0.0, spec, params, truncation=100.0)


# ========== Monte-Carlo-Drift ==========

def test_drift_check_at_time_zero_is_exact(params, small_sim):
    spec = choose_beta_c_M(params)
    result = drift_mc_check(1.0, 0.0, 0.0, spec, params, small_sim)
    assert result.lhs == pytest.approx(float(lyapunov_value(1.0, 0.0, spec)))
    assert result.standard_error == 0.0
    assert result.passed


def test_drift_check_passes(params, small_sim):
    spec = choose_beta_c_M(params)
    results = [drift_mc_check(y0, x0, 1.0, spec, params, small_sim)
               for y0, x0 in [(0.0, 0.0), (10.0, 10.0)]]
    assert all(r.passed for r in results)
    rows = drift_rows(results)
    assert rows[1][:3] == [10.0, 10.0, 1.0]
    assert rows[1][5] == 1


@pytest.mark.slow
def test_drift_check_from_distant_start(params):
    spec = choose_beta_c_M(params)
    sim = SimulationConfig(dt=1e-2, n_paths=100000, seed=13, workers=2, block_size=8192,
                           record_stride=0)
    result = drift_mc_check(10.0, 10.0, 2.0, spec, params, sim)
    assert result.passed
    assert result.lhs < result.rhs


def test_bias_allowance_shrinks_with_step():
    sim = SimulationConfig(bias_coefficient=1.0, bias_order=0.5)
    assert sim.bias_allowance(1e-4) < sim.bias_allowance(1e-2)


# ========== Totalvariation ==========

def test_histogram_tv_extremes():
    rng = np.random.default_rng(3)
    a = (rng.normal(0.0, 1.0, 5000), rng.normal(0.0, 1.0, 5000))
    b = (rng.normal(20.0, 1.0, 5000), rng.normal(20.0, 1.0, 5000))
    tv_same, _, _, _ = histogram_tv(a, a, 32)
    tv_apart, se, shape, max_count = histogram_tv(a, b, 32)
    assert tv_same == 0.0
    assert tv_apart > 0.95
    assert se >= 0.0
    assert shape[0] <= 34 and shape[1] <= 34
    assert max_count > 0


def test_common_random_numbers_make_equal_starts_indistinguishable(params, small_sim):
    report = tv_decay((1.0, 1.0), (1.0, 1.0), [0.5, 1.0], params, small_sim)
    assert report.tv_estimates == [0.0, 0.0]
    assert math.isnan(report.fit_rate)
    assert len(tv_rows(report)) == 2


def test_tv_times_must_increase(params, small_sim):
    with pytest.raises(ParameterError):
        tv_decay((0.0, 0.0), (1.0, 1.0), [1.0, 0.5], params, small_sim)


@pytest.mark.slow
def test_tv_decays_from_distant_starts(params):
    sim = SimulationConfig(dt=1e-2, n_paths=20000, seed=42, workers=2, block_size=4096,
                           record_stride=0)
    report = tv_decay((0.0, 0.0), (10.0, 10.0), [0.5, 1.0, 2.0, 4.0, 8.0], params, sim,
                      max_bins=16)
    assert report.tv_estimates[0] > 0.8
    assert report.tv_estimates[-1] < report.tv_estimates[0] / 2
    assert report.fit_rate < 0.0
    assert report.spearman < -0.9


@pytest.mark.slow
def test_tv_is_stable_under_bin_refinement(params):
    sim = SimulationConfig(dt=1e-2, n_paths=20000, seed=5, workers=2, block_size=4096,
                           record_stride=0)
    ts = [0.5, 1.0]
    coarse = tv_decay((0.0, 0.0), (10.0, 10.0), ts, params, sim, max_bins=4)
    fine = tv_decay((0.0, 0.0), (10.0, 10.0), ts, params, sim, max_bins=8)
    assert all(f[0] > c[0] for c, f in zip(coarse.bin_counts, fine.bin_counts))
    for tv_coarse, tv_fine in zip(coarse.tv_estimates, fine.tv_estimates):
        assert tv_fine == pytest.approx(tv_coarse, abs=0.1)


def test_independent_ensembles_from_equal_starts_agree(params):
    n_paths = 20000
    sim = SimulationConfig(dt=5e-2, n_paths=n_paths, seed=11, workers=1, block_size=4096,
                           record_stride=0)
    report = tv_decay((1.0, 1.0), (1.0, 1.0), [1.0], params, sim, max_bins=1,
                      common_random_numbers=False)
    assert 0.0 < report.tv_estimates[0] <= 2.0 / math.sqrt(n_paths)


# ========== Strahlexponenten ==========

def test_ray_regimes():
    assert ray_regime(math.pi / 2) == "real_part"
    assert ray_regime(-math.pi / 2) == "real_part"
    assert ray_regime(math.pi) == "modulus"
    with pytest.raises(ParameterError):
        ray_regime(4.0)


def test_rho_grid_must_start_at_two(params, quad):
    with pytest.raises(ParameterError, match="rho >= 2"):
        ray_exponent_check(1.0, params, math.pi / 2, [1.0, 4.0, 16.0], quad)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_imaginary_ray_slope(alpha):
    params = ModelParams(a=1.0, b=1.0, alpha=alpha)
    quad = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8)
    rhos = np.geomspace(2.0 ** 20, 2.0 ** 60, 11)
    report = ray_exponent_check(1.0, params, math.pi / 2, rhos, quad)
    assert report.regime == "real_part"
    assert report.slope == pytest.approx(2.0 - alpha, abs=0.05)
    assert len(bounds_rows(report)) == len(rhos)


def test_modulus_regime_stays_below_growth_bound(params):
    quad = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8)
    rhos = np.geomspace(2.0 ** 20, 2.0 ** 60, 11)
    report = ray_exponent_check(1.0, params, 3 * math.pi / 4, rhos, quad)
    assert report.regime == "modulus"
    assert report.slope <= report.expected_slope + 0.05
    assert np.all(report.ratios > 0.0)
