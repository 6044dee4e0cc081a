"""
Stable-CIR Labor: alpha-Wurzel-Prozess mit gekoppeltem Ornstein-Uhlenbeck-Faktor
"""

__version__ = "1.0.0"

from .config import RunConfig
from .exceptions import (AcceptanceError, BranchCutError, ConfigError, DensityEvaluationError,
                         ParameterError, QuadratureError, SimulationError, StableCIRError)
from .models import ModelParams, Representation
from .logging_coordinator import LoggingCoordinator
from .runner import ExperimentRunner, RunResult

__all__ = [
    "__version__",

    # Haupt-Klassen
    "RunConfig",
    "ModelParams",
    "Representation",
    "ExperimentRunner",
    "RunResult",
    "LoggingCoordinator",

    # Fehler
    "StableCIRError",
    "ParameterError",
    "ConfigError",
    "BranchCutError",
    "QuadratureError",
    "DensityEvaluationError",
    "SimulationError",
    "AcceptanceError"
]
