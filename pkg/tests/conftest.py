"""Gemeinsame Fixtures für die Testsuite."""

import os

import pytest
from hypothesis import HealthCheck, settings

from stable_cir import ModelParams, RunConfig
from stable_cir.config import QuadratureConfig, SimulationConfig

settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=25, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture
def params() -> ModelParams:
    """Referenzparameter a = b = 1, alpha = 1.5, m = 0, theta = 1"""
    return ModelParams(a=1.0, b=1.0, alpha=1.5, m=0.0, theta=1.0)


@pytest.fixture
def quad() -> QuadratureConfig:
    return QuadratureConfig(abs_tol=1e-10, rel_tol=1e-10, max_subdivisions=20000,
                            xi_truncation=None, gauss_order=10, chunk_size=2048)


@pytest.fixture
def loose_quad() -> QuadratureConfig:
    """Gröbere Toleranzen für die teuren Dichte-Integrale"""
    return QuadratureConfig(abs_tol=1e-7, rel_tol=1e-7, max_subdivisions=20000,
                            xi_truncation=None, gauss_order=10, chunk_size=2048)


@pytest.fixture
def small_sim() -> SimulationConfig:
    return SimulationConfig(dt=1e-2, horizon=1.0, n_paths=500, seed=7, workers=1,
                            block_size=4096, record_stride=0, bias_coefficient=1.0,
                            bias_order=0.5)


@pytest.fixture
def run_config(tmp_path) -> RunConfig:
    """RunConfig mit Ausgabe im temporären Verzeichnis und ohne Anzeige"""
    config = RunConfig()
    config.output.path = str(tmp_path / "out.csv")
    config.display.enabled = False
    return config
