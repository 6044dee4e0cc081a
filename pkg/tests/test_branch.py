"""Tests für den Hauptzweig und den Riccati-Fluss."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stable_cir import BranchCutError, ModelParams, ParameterError
from stable_cir.config import QuadratureConfig
from stable_cir.core.branch import (ComplexScalar, principal_arg, principal_log, riccati_v,
                                    riccati_v_integral, riccati_v_integral_values,
                                    riccati_v_values)
from stable_cir.core.transforms import limit_d

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def off_negative_axis(re: float, im: float) -> bool:
    return im != 0.0 and math.hypot(re, im) > 1e-3


# ========== Hauptzweig ==========

def test_negative_real_axis_has_argument_pi():
    assert principal_arg(-1.0) == math.pi
    assert principal_arg(complex(-1.0, -0.0)) == math.pi
    assert ComplexScalar(-2.0, 0.0).arg() == math.pi


def test_log_of_zero_is_branch_cut_error():
    with pytest.raises(BranchCutError):
        principal_log(0.0)


@given(finite, finite)
def test_argument_is_odd_under_conjugation(re, im):
    if not off_negative_axis(re, im):
        return
    z = ComplexScalar(re, im)
    assert z.conj().arg() == -z.arg()
    assert -math.pi < z.arg() <= math.pi


@given(finite, finite, st.floats(min_value=-3.0, max_value=3.0))
def test_power_respects_conjugation(re, im, beta):
    if not off_negative_axis(re, im):
        return
    z = ComplexScalar(re, im)
    left = z.conj().power(beta).to_complex()
    right = z.power(beta).to_complex().conjugate()
    assert cmath.isclose(left, right, rel_tol=1e-12, abs_tol=1e-300)


@given(finite, finite)
def test_zeroth_power_is_one(re, im):
    if re == 0.0 and im == 0.0:
        return
    assert ComplexScalar(re, im).power(0.0).to_complex() == 1.0


# ========== Riccati-Fluss ==========

def test_initial_value_is_returned_exactly(params):
    assert riccati_v(0.0, 3.7, params).to_complex() == 3.7


def test_limit_for_large_lambda(params):
    d = limit_d(1.0, params)
    assert d == pytest.approx(5.3466, rel=1e-4)
    assert abs(riccati_v(1.0, 1e8, params).re - d) < 1e-3 * d


def test_limit_for_large_lambda_steep_alpha():
    params = ModelParams(a=1.0, b=1.0, alpha=1.8, m=0.0, theta=1.0)
    d = limit_d(1.0, params)
    assert abs(riccati_v(1.0, 1e6, params).re - d) < 1e-3 * d


def test_limit_for_small_alpha_needs_huge_lambda():
    # Konvergenz wie lambda^(1-alpha): bei alpha = 1.2 erst weit jenseits von 1e9
    params = ModelParams(a=1.0, b=0.5, alpha=1.2, m=0.0, theta=1.0)
    d = limit_d(2.0, params)
    assert riccati_v(2.0, 1e30, params).re == pytest.approx(d, rel=1e-4)


def test_zero_argument_is_rejected(params):
    with pytest.raises(ParameterError):
        riccati_v(1.0, 0.0, params)


def test_invalid_alpha_is_rejected():
    with pytest.raises(ParameterError, match="alpha must lie in open interval"):
        riccati_v(1.0, 1.0, ModelParams(alpha=2.0))


def test_negative_time_is_rejected(params):
    with pytest.raises(ParameterError):
        riccati_v(-0.1, 1.0, params)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
@pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
def test_solves_the_riccati_equation(alpha, b):
    params = ModelParams(a=1.0, b=b, alpha=alpha, m=0.0, theta=1.0)
    ts = np.linspace(0.1, 3.0, 12)
    lambdas = np.linspace(0.1, 10.0, 12)
    h = 1e-5
    for lam in lambdas:
        v = riccati_v_values(ts, lam, params).real
        derivative = (riccati_v_values(ts + h, lam, params).real
                      - riccati_v_values(ts - h, lam, params).real) / (2 * h)
        residual = derivative + b * v + v ** alpha / alpha
        assert np.all(np.abs(residual) <= 1e-6 * (1.0 + np.abs(v)))


def test_flow_property(params):
    rng = np.random.default_rng(0)
    for _ in range(100):
        t, s = rng.uniform(0.01, 3.0, 2)
        lam = rng.uniform(0.1, 100.0)
        direct = riccati_v(t + s, lam, params).re
        composed = riccati_v(t, riccati_v(s, lam, params), params).re
        assert composed == pytest.approx(direct, rel=1e-10)


@given(st.floats(min_value=0.0, max_value=5.0), finite, finite)
def test_flow_commutes_with_conjugation(t, re, im):
    if not off_negative_axis(re, im):
        return
    params = ModelParams()
    z = complex(re, im)
    left = riccati_v(t, z.conjugate(), params).to_complex()
    right = riccati_v(t, z, params).to_complex().conjugate()
    assert cmath.isclose(left, right, rel_tol=1e-12, abs_tol=1e-300)


def test_positive_start_stays_positive_and_decreases(params):
    ts = np.linspace(0.0, 5.0, 51)
    v = riccati_v_values(ts, 2.0, params)
    assert np.all(v.imag == 0.0)
    assert np.all(v.real > 0.0)
    assert np.all(np.diff(v.real) < 0.0)


# ========== Integral des Flusses ==========

def test_integral_vanishes_at_time_zero(params, quad):
    assert riccati_v_integral(0.0, 2.5, params, quad).to_complex() == 0.0


def test_integral_of_positive_start_is_real_and_positive(params, quad):
    value = riccati_v_integral(1.0, 1.0, params, quad)
    assert value.im == 0.0
    assert 0.0 < value.re < 1.0


def test_integral_is_additive(params):
    quad = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-12)
    t, s, lam = 0.7, 1.3, 4.0
    whole = riccati_v_integral(t + s, lam, params, quad).re
    head = riccati_v_integral(s, lam, params, quad).re
    tail = riccati_v_integral(t, riccati_v(s, lam, params), params, quad).re
    assert head + tail == pytest.approx(whole, rel=1e-8)


def test_tightening_tolerance_stays_within_error_estimate(params):
    coarse = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8)
    fine = coarse.scaled(0.5)
    z = np.array([2.0 + 3.0j, 50.0 - 10.0j, 1e4j])
    first = riccati_v_integral_values(1.0, z, params, coarse)
    second = riccati_v_integral_values(1.0, z, params, fine)
    assert np.all(np.abs(first.values - second.values) <= first.error_estimate)


def test_integral_along_imaginary_axis_grows_like_rho_power(params, quad):
    rhos = np.geomspace(2.0 ** 20, 2.0 ** 60, 11)
    values = riccati_v_integral_values(1.0, 1j * rhos, params, quad).values.real
    slope = np.polyfit(np.log(rhos), np.log(values), 1)[0]
    assert slope == pytest.approx(2.0 - params.alpha, abs=0.05)
