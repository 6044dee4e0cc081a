"""
Konfigurationsmodul für das Stable-CIR Labor.

Alle Gruppen lesen ihre Standardwerte aus Umgebungsvariablen und lassen sich
als flache key=value Datei speichern und wieder laden.
"""

import logging
import math
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from .exceptions import ConfigError
from .models import ModelParams

COMMANDS: Tuple[str, ...] = (
    "laplace", "density", "cdf", "simulate",
    "lyapunov-check", "tv-decay", "bounds-check"
)

# Befehle, die theta > 0 bzw. a > 0 voraussetzen
ERGODIC_COMMANDS = ("lyapunov-check", "tv-decay")
DENSITY_COMMANDS = ("density", "cdf")


def _parse_optional_float(raw: str) -> Optional[float]:
    """'auto' bzw. leer -> None, sonst float"""
    raw = raw.strip()
    if raw.lower() in ("", "auto", "none"):
        return None
    return float(raw)


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("true", "1", "yes", "ja"):
        return True
    if value in ("false", "0", "no", "nein"):
        return False
    raise ValueError(f"kein Boolean: {raw!r}")


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


@dataclass
class ModelConfig:
    """Modellparameter"""
    a: float = field(default_factory=lambda: float(os.getenv("MODEL_A", "1.0")))
    b: float = field(default_factory=lambda: float(os.getenv("MODEL_B", "1.0")))
    alpha: float = field(default_factory=lambda: float(os.getenv("MODEL_ALPHA", "1.5")))
    m: float = field(default_factory=lambda: float(os.getenv("MODEL_M", "0.0")))
    theta: float = field(default_factory=lambda: float(os.getenv("MODEL_THETA", "1.0")))

    def to_params(self) -> ModelParams:
        """Erzeugt den unveränderlichen Parametersatz"""
        return ModelParams(a=self.a, b=self.b, alpha=self.alpha, m=self.m, theta=self.theta)


@dataclass
class QuadratureConfig:
    """Toleranzen und Grenzen aller eindimensionalen Integrale"""
    abs_tol: float = field(default_factory=lambda: float(os.getenv("QUAD_ABS_TOL", "1e-10")))
    rel_tol: float = field(default_factory=lambda: float(os.getenv("QUAD_REL_TOL", "1e-10")))
    max_subdivisions: int = field(default_factory=lambda: int(os.getenv("QUAD_MAX_SUBDIVISIONS", "20000")))
    # None = automatisch aus der angepassten Hüllkurve
    xi_truncation: Optional[float] = field(
        default_factory=lambda: _parse_optional_float(os.getenv("QUAD_XI_TRUNCATION", "auto")),
        metadata={"parse": _parse_optional_float})
    gauss_order: int = field(default_factory=lambda: int(os.getenv("QUAD_GAUSS_ORDER", "10")))
    chunk_size: int = field(default_factory=lambda: int(os.getenv("QUAD_CHUNK_SIZE", "2048")))

    def violations(self) -> List[str]:
        errors = []
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                errors.append(f"quad.{name} must be finite and positive")
        if self.max_subdivisions < 1:
            errors.append("quad.max_subdivisions must be a positive integer")
        if self.xi_truncation is not None and not (math.isfinite(self.xi_truncation)
                                                   and self.xi_truncation > 0):
            errors.append("quad.xi_truncation must be positive or 'auto'")
        if self.gauss_order < 2:
            errors.append("quad.gauss_order must be at least 2")
        if self.chunk_size < 1:
            errors.append("quad.chunk_size must be a positive integer")
        return errors

    def scaled(self, factor: float) -> "QuadratureConfig":
        """Kopie mit um factor skalierten Toleranzen"""
        return replace(self, abs_tol=self.abs_tol * factor, rel_tol=self.rel_tol * factor)


@dataclass
class SimulationConfig:
    """Einstellungen der Pfadsimulation"""
    dt: float = field(default_factory=lambda: float(os.getenv("SIM_DT", "1e-3")))
    horizon: float = field(default_factory=lambda: float(os.getenv("SIM_HORIZON", "1.0")))
    n_paths: int = field(default_factory=lambda: int(os.getenv("SIM_N_PATHS", "10000")))
    seed: int = field(default_factory=lambda: int(os.getenv("STABLE_CIR_SEED", "42")))
    workers: int = field(default_factory=lambda: int(os.getenv("SIM_WORKERS", "1")))
    block_size: int = field(default_factory=lambda: int(os.getenv("SIM_BLOCK_SIZE", "4096")))
    # 0 = nur Start und Ende aufzeichnen
    record_stride: int = field(default_factory=lambda: int(os.getenv("SIM_RECORD_STRIDE", "100")))
    # Zulässiger Diskretisierungsfehler: bias_coefficient * dt^bias_order
    bias_coefficient: float = field(default_factory=lambda: float(os.getenv("SIM_BIAS_COEFFICIENT", "1.0")))
    bias_order: float = field(default_factory=lambda: float(os.getenv("SIM_BIAS_ORDER", "0.5")))

    def bias_allowance(self, dt: Optional[float] = None) -> float:
        """Erlaubter Bias für Schrittweite dt (fällt monoton mit dt)"""
        step = self.dt if dt is None else dt
        return self.bias_coefficient * step ** self.bias_order

    def violations(self) -> List[str]:
        errors = []
        if not (math.isfinite(self.dt) and self.dt > 0):
            errors.append("sim.dt must be positive")
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            errors.append("sim.horizon must be positive")
        elif self.dt > self.horizon:
            errors.append("sim.dt must not exceed sim.horizon")
        if self.n_paths < 1:
            errors.append("sim.n_paths must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            errors.append("sim.seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            errors.append("sim.workers must be at least 1")
        if self.block_size < 1:
            errors.append("sim.block_size must be at least 1")
        if self.record_stride < 0:
            errors.append("sim.record_stride must be nonnegative")
        return errors


@dataclass
class ExperimentConfig:
    """Gitter und Startwerte der einzelnen Befehle"""
    t: float = field(default_factory=lambda: float(os.getenv("EXP_T", "1.0")))
    y0: float = field(default_factory=lambda: float(os.getenv("EXP_Y0", "1.0")))
    x0: float = field(default_factory=lambda: float(os.getenv("EXP_X0", "0.0")))
    grid: str = field(default_factory=lambda: os.getenv("EXP_GRID", "0:20:512"))
    lambdas: str = field(default_factory=lambda: os.getenv("EXP_LAMBDAS", "0.5,1,2"))
    ts: str = field(default_factory=lambda: os.getenv("EXP_TS", "0.5,1,2,4,8"))
    init_a: str = field(default_factory=lambda: os.getenv("EXP_INIT_A", "0,0"))
    init_b: str = field(default_factory=lambda: os.getenv("EXP_INIT_B", "10,10"))
    representation: str = field(default_factory=lambda: os.getenv("EXP_REPRESENTATION", "fourier"))
    angle: str = field(default_factory=lambda: os.getenv("EXP_ANGLE", "pi/2"))
    rho_grid: str = field(default_factory=lambda: os.getenv("EXP_RHO_GRID", "2^20:2^60:11"))
    atom_threshold: float = field(default_factory=lambda: float(os.getenv("EXP_ATOM_THRESHOLD", "1e-6")))
    tv_max_bins: int = field(default_factory=lambda: int(os.getenv("EXP_TV_MAX_BINS", "32")))
    tv_common_random_numbers: bool = field(
        default_factory=lambda: _env_bool("EXP_TV_COMMON_RANDOM_NUMBERS", "True"))
    certificate_points: int = field(default_factory=lambda: int(os.getenv("EXP_CERTIFICATE_POINTS", "200")))


@dataclass
class AcceptanceConfig:
    """Schwellen der Akzeptanzprüfungen"""
    norm_tolerance: float = field(default_factory=lambda: float(os.getenv("ACC_NORM_TOLERANCE", "1e-4")))
    slope_tolerance: float = field(default_factory=lambda: float(os.getenv("ACC_SLOPE_TOLERANCE", "0.05")))
    spearman_threshold: float = field(default_factory=lambda: float(os.getenv("ACC_SPEARMAN_THRESHOLD", "-0.9")))


@dataclass
class OutputConfig:
    """Ausgabe-Einstellungen"""
    path: str = field(default_factory=lambda: os.getenv("OUTPUT_PATH", "stable_cir_output.csv"))
    write_summary: bool = field(default_factory=lambda: _env_bool("OUTPUT_WRITE_SUMMARY", "True"))


@dataclass
class LoggingConfig:
    """Logging-Einstellungen"""
    log_level: str = field(default_factory=lambda: os.getenv("LOG_LEVEL", "WARNING"))
    log_file: str = field(default_factory=lambda: os.getenv("LOG_FILE", ""))


@dataclass
class DisplayConfig:
    """Anzeige-Einstellungen"""
    enabled: bool = field(default_factory=lambda: _env_bool("DISPLAY_ENABLED", "True"))


# Gruppen, die in die key=value Datei eingehen
_GROUPS: Tuple[str, ...] = ("model", "quad", "sim", "experiment", "acceptance", "output")


class RunConfig:
    """Zentrale Konfigurationsklasse mit gruppierten Einstellungen"""

    def __init__(self, command: str = "density"):
        """
        Initialisiert alle Konfigurationsgruppen.

        Args:
            command: Auszuführender Befehl
        """
        self.command = command
        self.model = ModelConfig()
        self.quad = QuadratureConfig()
        self.sim = SimulationConfig()
        self.experiment = ExperimentConfig()
        self.acceptance = AcceptanceConfig()
        self.output = OutputConfig()
        self.logging = LoggingConfig()
        self.display = DisplayConfig()

    @property
    def params(self) -> ModelParams:
        return self.model.to_params()

    # ========== Validierung ==========

    def validate(self) -> List[str]:
        """
        Sammelt alle Invariantenverletzungen, ohne etwas zu verändern.

        Returns:
            Liste der Verletzungen (leer = gültig)
        """
        errors: List[str] = []

        if self.command not in COMMANDS:
            errors.append(f"unknown command {self.command!r}")

        params = self.params
        errors.extend(params.violations())
        errors.extend(self.quad.violations())
        errors.extend(self.sim.violations())

        if self.command in DENSITY_COMMANDS and params.a <= 0:
            errors.append("density requires a > 0")
        if self.command in ERGODIC_COMMANDS and params.theta <= 0:
            errors.append(f"{self.command} requires theta > 0 (exponential ergodicity needs theta>0)")

        if self.experiment.t <= 0 and self.command in ("density", "cdf", "laplace", "bounds-check"):
            errors.append("experiment.t must be positive")
        if self.experiment.y0 < 0:
            errors.append("experiment.y0 must be nonnegative")
        if self.experiment.representation not in ("fourier", "real_axis"):
            errors.append("experiment.representation must be 'fourier' or 'real_axis'")
        if (self.command == "density" and self.experiment.representation == "real_axis"
                and self.experiment.y0 != 0):
            errors.append("real_axis representation requires y0 = 0")

        errors.extend(self._grid_violations())

        if errors:
            for error in errors:
                logging.getLogger(__name__).debug(f"Konfigurationsfehler: {error}")
        return errors

    def _grid_violations(self) -> List[str]:
        """Prüft, ob sich alle Gitterangaben parsen lassen"""
        from .gridspec import parse_angle, parse_float_list, parse_geometric_grid, parse_grid, parse_pair

        errors = []
        checks: List[Tuple[str, Callable[[str], Any], str]] = [
            ("experiment.grid", parse_grid, self.experiment.grid),
            ("experiment.lambdas", parse_float_list, self.experiment.lambdas),
            ("experiment.ts", parse_float_list, self.experiment.ts),
            ("experiment.init_a", parse_pair, self.experiment.init_a),
            ("experiment.init_b", parse_pair, self.experiment.init_b),
            ("experiment.angle", parse_angle, self.experiment.angle),
            ("experiment.rho_grid", parse_geometric_grid, self.experiment.rho_grid),
        ]
        for name, parser, raw in checks:
            try:
                parser(raw)
            except ValueError as e:
                errors.append(f"{name}: {e}")
        return errors

    # ========== Serialisierung ==========

    def to_dict(self) -> Dict[str, Any]:
        """Flaches Dictionary 'gruppe.schlüssel' -> Wert"""
        flat: Dict[str, Any] = {"command": self.command}
        for group_name in _GROUPS:
            group = getattr(self, group_name)
            for f in fields(group):
                flat[f"{group_name}.{f.name}"] = getattr(group, f.name)
        return flat

    def to_lines(self) -> List[str]:
        """Sortierte key=value Zeilen der aufgelösten Konfiguration"""
        return [f"{key}={_format_value(value)}" for key, value in sorted(self.to_dict().items())]

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "RunConfig":
        """
        Liest key=value Zeilen ('#' leitet Kommentare ein).

        Args:
            lines: Zeilen der Konfigurationsdatei

        Returns:
            Neue RunConfig

        Raises:
            ConfigError: bei unbekannten Schlüsseln oder ungültigen Werten
        """
        config = cls()
        for number, raw_line in enumerate(lines, start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"Zeile {number}: erwartet key=value, gefunden {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            config.set_value(key, value)
        return config

    def set_value(self, key: str, raw: str) -> None:
        """
        Setzt einen Wert über seinen flachen Schlüssel.

        Raises:
            ConfigError: bei unbekanntem Schlüssel oder nicht parsbarem Wert
        """
        if key == "command":
            self.command = raw
            return

        group_name, _, attr = key.partition(".")
        if group_name not in _GROUPS or not attr:
            raise ConfigError(f"unknown config key {key!r}")
        group = getattr(self, group_name)
        field_map = {f.name: f for f in fields(group)}
        if attr not in field_map:
            raise ConfigError(f"unknown config key {key!r}")

        parser = field_map[attr].metadata.get("parse") or _parser_for(getattr(group, attr))
        try:
            setattr(group, attr, parser(raw))
        except ValueError as e:
            raise ConfigError(f"invalid value for {key!r}: {e}") from e

    def save_to_file(self, filepath: Path) -> None:
        """Speichert die Konfiguration als key=value Datei"""
        Path(filepath).write_text("\n".join(self.to_lines()) + "\n", encoding="utf-8")

    @classmethod
    def load_from_file(cls, filepath: Path) -> "RunConfig":
        """Lädt eine key=value Datei"""
        path = Path(filepath)
        if not path.exists():
            raise ConfigError(f"Konfigurationsdatei nicht gefunden: {path}")
        return cls.from_lines(path.read_text(encoding="utf-8").splitlines())


def _format_value(value: Any) -> str:
    """Formatiert einen Wert so, dass er verlustfrei zurückgelesen wird"""
    if value is None:
        return "auto"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parser_for(current: Any) -> Callable[[str], Any]:
    """Wählt den Parser anhand des Typs des aktuellen Werts"""
    if isinstance(current, bool):
        return _parse_bool
    if isinstance(current, int):
        return int
    if isinstance(current, float):
        return float
    return str
