"""
Datenmodelle für das Stable-CIR Labor.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .exceptions import ParameterError


@dataclass(frozen=True)
class ModelParams:
    """Die fünf Modellparameter (a, b, alpha, m, theta)"""

    a: float = 1.0  # Driftniveau von Y
    b: float = 1.0  # Mean Reversion von Y
    alpha: float = 1.5  # Stabilitätsindex in (1, 2)
    m: float = 0.0  # Driftniveau von X
    theta: float = 1.0  # Mean Reversion von X

    def violations(self) -> List[str]:
        """
        Sammelt alle Verletzungen der Grundinvarianten.

        Returns:
            Liste der Verletzungen (leer = gültig)
        """
        errors: List[str] = []
        values = {"a": self.a, "b": self.b, "alpha": self.alpha,
                  "m": self.m, "theta": self.theta}
        for name, value in values.items():
            if not math.isfinite(value):
                errors.append(f"{name} must be finite")

        if not errors:
            if self.a < 0:
                errors.append("a must be nonnegative")
            if self.b <= 0:
                errors.append("b must be positive")
            if not 1.0 < self.alpha < 2.0:
                errors.append("alpha must lie in open interval (1,2)")
        return errors

    def validate(self) -> "ModelParams":
        """
        Prüft die Grundinvarianten.

        Returns:
            self, für Verkettung

        Raises:
            ParameterError: bei verletzter Invariante
        """
        errors = self.violations()
        if errors:
            raise ParameterError("; ".join(errors))
        return self

    def require_density(self) -> "ModelParams":
        """Wie validate(), zusätzlich a > 0"""
        self.validate()
        if self.a <= 0:
            raise ParameterError("density requires a > 0")
        return self

    def require_ergodicity(self) -> "ModelParams":
        """Wie validate(), zusätzlich theta > 0"""
        self.validate()
        if self.theta <= 0:
            raise ParameterError("ergodicity requires theta > 0")
        return self

    # === Abgeleitete Konstanten der Riccati-Lösung ===
    @property
    def c(self) -> float:
        """1/(alpha*b)"""
        return 1.0 / (self.alpha * self.b)

    @property
    def kappa(self) -> float:
        """Wachstumsrate b*(alpha-1) der linearisierten Gleichung"""
        return self.b * (self.alpha - 1.0)

    @property
    def outer_exponent(self) -> float:
        """Exponent 1/(1-alpha) der äußeren Potenz"""
        return 1.0 / (1.0 - self.alpha)


class Representation(Enum):
    """Integraldarstellung der Übergangsdichte"""
    FOURIER = "fourier"
    REAL_AXIS = "real_axis"


@dataclass
class DensityGrid:
    """Dichtewerte auf einem Abszissengitter"""

    t: float
    y0: float
    xs: np.ndarray
    values: np.ndarray
    representation: Representation
    norm_defect: float
    params: ModelParams
    head_mass: float = 0.0  # P(Y <= xs[0])
    tail_mass: float = 0.0  # P(Y > xs[-1])
    boundary_flag: bool = False  # xs enthält x = 0 (Formelwert, kein Dichtewert)

    @property
    def min_interior(self) -> float:
        """Kleinster Wert ohne die Randpunkte"""
        if len(self.values) <= 2:
            return float(np.min(self.values))
        return float(np.min(self.values[1:-1]))

    def first_moment(self) -> float:
        """Erstes Moment des Gitters (Simpson, ohne Restmasse)"""
        from scipy.integrate import simpson
        return float(simpson(self.xs * self.values, x=self.xs))


@dataclass
class PathEnsemble:
    """Simulierte Pfade (Y, X) auf den aufgezeichneten Zeitpunkten"""

    dt: float
    n_steps: int
    n_paths: int
    seed: int
    times: np.ndarray  # aufgezeichnete Zeitpunkte, beginnend bei 0
    steps: np.ndarray  # zugehörige Schrittindizes
    y_paths: np.ndarray  # [n_paths x len(times)], >= 0
    x_paths: np.ndarray
    params: ModelParams
    n_projections: int = 0  # Anzahl Positivteil-Projektionen

    @property
    def horizon(self) -> float:
        return self.dt * self.n_steps

    @property
    def terminal_y(self) -> np.ndarray:
        return self.y_paths[:, -1]

    @property
    def terminal_x(self) -> np.ndarray:
        return self.x_paths[:, -1]

    def summary(self) -> List[Tuple[float, float, float, float]]:
        """
        Querschnittsstatistik je aufgezeichnetem Zeitpunkt.

        Returns:
            Liste von (t, mean_y, mean_x, var_x)
        """
        mean_y = self.y_paths.mean(axis=0)
        mean_x = self.x_paths.mean(axis=0)
        ddof = 1 if self.n_paths > 1 else 0
        var_x = self.x_paths.var(axis=0, ddof=ddof)
        return [(float(t), float(my), float(mx), float(vx))
                for t, my, mx, vx in zip(self.times, mean_y, mean_x, var_x)]


@dataclass(frozen=True)
class LyapunovSpec:
    """Foster-Lyapunov-Funktion V(y, x) = beta*y + h(x) mit Drift-Konstanten"""

    beta: float
    c: float
    M: float
    mollifier: str = "smootherstep"


@dataclass
class GridCertificate:
    """Numerisches Zertifikat für A V <= -c V + M"""

    max_excess: float  # max über das Gitter von A V + c V - M
    y_coefficient: float  # Koeffizient von y in A V + c V (muss <= 0 sein)
    tail_slope: float  # Steigung c - theta für |x| >= 2 (muss <= 0 sein)
    grid_shape: Tuple[int, int]

    @property
    def passed(self) -> bool:
        return self.max_excess <= 0.0 and self.y_coefficient <= 0.0 and self.tail_slope <= 0.0


@dataclass
class DriftCheckResult:
    """Monte-Carlo-Prüfung von E[V(Y_t, X_t)] <= e^{-ct} V(y0, x0) + M/c"""

    y0: float
    x0: float
    t: float
    lhs: float
    rhs: float
    standard_error: float
    bias_allowance: float

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs + 3.0 * self.standard_error + self.bias_allowance


@dataclass
class TvDecayReport:
    """Empirischer Abfall der Totalvariation zweier Ensembles"""

    ts: List[float]
    tv_estimates: List[float]
    se_proxy: List[float]
    fit_rate: float
    fit_intercept: float
    spearman: float
    initial_pair: Tuple[Tuple[float, float], Tuple[float, float]]
    bin_counts: List[Tuple[int, int]]
    n_paths: int
    sparse_times: List[float] = field(default_factory=list)


@dataclass
class BoundsReport:
    """Regression log|Integral| gegen log rho entlang eines Strahls"""

    t: float
    angle: float
    regime: str  # "real_part" oder "modulus"
    rhos: np.ndarray
    values: np.ndarray
    slope: float
    intercept: float
    expected_slope: float  # 2 - alpha

    @property
    def ratios(self) -> np.ndarray:
        """|Integral| / rho^(2-alpha)"""
        return np.abs(self.values) / self.rhos ** self.expected_slope


@dataclass
class EnvelopeFit:
    """Angepasste Hüllkurve |phi(xi)| <= c1 * exp(-c2 * xi^q)"""

    c1: float
    c2: float
    exponent: float
    xi_cutoff: float
    tail_estimate: float
    auto: bool = True
    samples: Optional[int] = None
