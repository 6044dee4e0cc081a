"""
Experiment-Runner: führt einen Befehl aus, schreibt die CSV-Artefakte und
wertet die Akzeptanzprüfungen aus.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from log_system import LogType

from .config import RunConfig
from .core.density import cdf_rows, cdf_values, density_grid, density_rows
from .core.ergodicity import (bounds_rows, certify_grid, choose_beta_c_M, drift_mc_check, drift_rows,
                              ray_exponent_check, tv_decay, tv_rows)
from .core.simulation import empirical_atom, ensemble_rows, simulate_pair, summary_rows
from .core.transforms import atom_probability, laplace_rows, mean_x, mean_y
from .exceptions import AcceptanceError, ConfigError
from .gridspec import parse_angle, parse_float_list, parse_geometric_grid, parse_grid, parse_pair
from .logging_coordinator import LoggingCoordinator
from .models import Representation


@dataclass
class RunResult:
    """Ergebnis eines Laufs"""

    command: str
    artifacts: Dict[str, Path] = field(default_factory=dict)
    figures: Dict[str, Any] = field(default_factory=dict)  # Kennzahlen für Anzeige und Kopf
    checks: Dict[str, bool] = field(default_factory=dict)  # Akzeptanzprüfungen

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]


class ExperimentRunner:
    """Verteilt einen RunConfig-Befehl auf das zuständige Modul"""

    def __init__(self, config: RunConfig, coordinator: Optional[LoggingCoordinator] = None):
        """
        Initialisiert den Runner.

        Args:
            config: Aufgelöste Konfiguration
            coordinator: Vorhandener LoggingCoordinator (sonst neu erstellt)
        """
        self.config = config
        self.coordinator = coordinator or LoggingCoordinator(config)
        self.logger = logging.getLogger(__name__)

        self._handlers: Dict[str, Callable[[RunResult], None]] = {
            "laplace": self._run_laplace,
            "density": self._run_density,
            "cdf": self._run_cdf,
            "simulate": self._run_simulate,
            "lyapunov-check": self._run_lyapunov,
            "tv-decay": self._run_tv_decay,
            "bounds-check": self._run_bounds,
        }

    def run(self) -> RunResult:
        """
        Validiert, führt den Befehl aus und schreibt die Artefakte.

        Returns:
            RunResult mit Artefaktpfaden, Kennzahlen und Prüfungen

        Raises:
            ConfigError: bei ungültiger Konfiguration
            QuadratureError: wenn eine Quadratur ihr Budget überschreitet
            AcceptanceError: wenn eine Akzeptanzprüfung fehlschlägt (Artefakte sind dann geschrieben)
        """
        violations = self.config.validate()
        if violations:
            raise ConfigError("; ".join(violations))

        command = self.config.command
        result = RunResult(command=command)
        self.coordinator.log_startup_info()
        self._handlers[command](result)

        if not self.coordinator.close():
            raise OSError(f"Artefakte für {command} konnten nicht geschrieben werden")
        result.artifacts = dict(self.coordinator.written_paths())
        self.logger.info(f"{command} abgeschlossen, Artefakte: {list(result.artifacts.values())}")

        if not result.passed:
            failed = ", ".join(result.failed_checks)
            raise AcceptanceError(f"{command}: acceptance check failed ({failed})",
                                  detail={"result": result})
        return result

    # ========== Befehle ==========

    def _emit(self, log_type: LogType, rows: List[list], title: str, figures: Dict[str, Any]) -> None:
        info = self.coordinator.session_info(title, **figures)
        self.coordinator.log_result(log_type, rows, info)

    def _run_laplace(self, result: RunResult) -> None:
        exp = self.config.experiment
        lambdas = parse_float_list(exp.lambdas)
        rows = laplace_rows(exp.t, exp.y0, lambdas, self.config.params, self.config.quad)
        result.figures.update({f"laplace({row[2]})": row[3] for row in rows})
        self._emit(LogType.LAPLACE, rows, "laplace transform of Y", {})

    def _run_density(self, result: RunResult) -> None:
        exp = self.config.experiment
        params = self.config.params
        xs = parse_grid(exp.grid)
        grid = density_grid(exp.t, exp.y0, xs, params, self.config.quad,
                            Representation(exp.representation))

        result.figures.update({
            "norm_defect": grid.norm_defect,
            "head_mass": grid.head_mass,
            "tail_mass": grid.tail_mass,
            "min_interior": grid.min_interior,
            "mean_y": mean_y(exp.t, exp.y0, params),
        })
        if not math.isnan(grid.norm_defect):
            result.checks["normalization"] = abs(grid.norm_defect) < self.config.acceptance.norm_tolerance
        result.checks["positivity"] = grid.min_interior > 0.0
        self._emit(LogType.DENSITY, density_rows(grid), "transition density of Y", result.figures)

    def _run_cdf(self, result: RunResult) -> None:
        exp = self.config.experiment
        xs = parse_grid(exp.grid)
        values, error = cdf_values(exp.t, exp.y0, xs, self.config.params, self.config.quad)
        result.figures.update({"error_estimate": error, "cdf_max": float(values.max())})
        self._emit(LogType.CDF, cdf_rows(xs, values), "distribution function of Y", result.figures)

    def _run_simulate(self, result: RunResult) -> None:
        exp, sim = self.config.experiment, self.config.sim
        params = self.config.params
        ensemble = simulate_pair(exp.y0, exp.x0, sim.horizon, sim.dt, sim.n_paths, sim.seed, params,
                                 record_stride=sim.record_stride, block_size=sim.block_size,
                                 workers=sim.workers)

        last = ensemble.summary()[-1]
        result.figures.update({
            "n_projections": ensemble.n_projections,
            "mean_y": last[1],
            "mean_y_oracle": mean_y(ensemble.horizon, exp.y0, params),
            "mean_x": last[2],
            "mean_x_oracle": mean_x(ensemble.horizon, exp.x0, params),
        })
        if params.a == 0.0:
            result.figures["empirical_atom"] = empirical_atom(ensemble, exp.atom_threshold)
            result.figures["atom_probability"] = atom_probability(ensemble.horizon, exp.y0, params)

        self._emit(LogType.ENSEMBLE, ensemble_rows(ensemble), "simulated paths of (Y, X)",
                   result.figures)
        if self.config.output.write_summary:
            self._emit(LogType.SUMMARY, summary_rows(ensemble), "ensemble summary", {})

    def _run_lyapunov(self, result: RunResult) -> None:
        exp = self.config.experiment
        params = self.config.params
        spec = choose_beta_c_M(params)
        certificate = certify_grid(spec, params, n_points=exp.certificate_points)
        drift = drift_mc_check(exp.y0, exp.x0, exp.t, spec, params, self.config.sim)

        result.figures.update({
            "beta": spec.beta,
            "c": spec.c,
            "M": spec.M,
            "max_excess": certificate.max_excess,
            "standard_error": drift.standard_error,
        })
        result.checks["certificate"] = certificate.passed
        result.checks["drift"] = drift.passed
        self._emit(LogType.DRIFT, drift_rows([drift]), "Foster-Lyapunov drift check", result.figures)

    def _run_tv_decay(self, result: RunResult) -> None:
        exp = self.config.experiment
        ts = parse_float_list(exp.ts)
        report = tv_decay(parse_pair(exp.init_a), parse_pair(exp.init_b), ts, self.config.params,
                          self.config.sim, max_bins=exp.tv_max_bins,
                          common_random_numbers=exp.tv_common_random_numbers)

        result.figures.update({
            "fit_rate": report.fit_rate,
            "fit_intercept": report.fit_intercept,
            "spearman": report.spearman,
            "sparse_times": len(report.sparse_times),
        })
        if len(ts) >= 3:
            result.checks["spearman"] = report.spearman < self.config.acceptance.spearman_threshold
        self._emit(LogType.TV_DECAY, tv_rows(report), "total variation decay", result.figures)

    def _run_bounds(self, result: RunResult) -> None:
        exp = self.config.experiment
        report = ray_exponent_check(exp.t, self.config.params, parse_angle(exp.angle),
                                    parse_geometric_grid(exp.rho_grid), self.config.quad)

        tolerance = self.config.acceptance.slope_tolerance
        result.figures.update({
            "slope": report.slope,
            "intercept": report.intercept,
            "expected_slope": report.expected_slope,
            "regime": report.regime,
            "max_ratio": float(report.ratios.max()),
        })
        if report.regime == "real_part":
            result.checks["slope"] = abs(report.slope - report.expected_slope) <= tolerance
        else:
            # Nur Beschränktheit von |Integral| / rho^(2-alpha)
            result.checks["slope"] = report.slope <= report.expected_slope + tolerance
        self._emit(LogType.BOUNDS, bounds_rows(report), "exponent regression along a ray",
                   result.figures)
