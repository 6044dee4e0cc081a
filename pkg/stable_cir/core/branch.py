"""
Hauptzweig komplexer Potenzen und der Riccati-Fluss v_t(z).

v_t(z) löst dv/dt = -b*v - v^alpha/alpha mit v_0 = z. Über die Substitution
u = v^(1-alpha) wird die Gleichung linear; die Lösung lautet

    v_t(z) = (c*expm1(kappa*t) + z^(1-alpha)*e^(kappa*t))^(1/(1-alpha))

mit c = 1/(alpha*b) und kappa = b*(alpha-1). Alle Potenzen benutzen den
Hauptzweig mit Arg in (-pi, pi].
"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..config import QuadratureConfig
from ..exceptions import BranchCutError, ParameterError
from ..models import ModelParams
from .quadrature import QuadratureResult, geometric_breakpoints, integrate

logger = logging.getLogger(__name__)

# Relativer Abstand der inneren Basis zur 0 (gemessen an ihren Summanden),
# ab dem ein Domänenfehler gemeldet wird
BRANCH_POINT_TOLERANCE = 1e-14

ComplexLike = Union["ComplexScalar", complex, float, int]


@dataclass(frozen=True)
class ComplexScalar:
    """Komplexe Zahl mit Hauptzweig-Operationen"""

    re: float
    im: float = 0.0

    @classmethod
    def from_value(cls, value: ComplexLike) -> "ComplexScalar":
        if isinstance(value, ComplexScalar):
            return value
        z = complex(value)
        return cls(z.real, z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0.0 and self.im == 0.0

    def conj(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def arg(self) -> float:
        """Hauptwert des Arguments in (-pi, pi]"""
        return float(principal_arg(self.to_complex()))

    def log(self) -> "ComplexScalar":
        return ComplexScalar.from_value(complex(principal_log(self.to_complex())))

    def power(self, beta: float) -> "ComplexScalar":
        """z^beta = exp(beta * Log z)"""
        return ComplexScalar.from_value(complex(principal_power(self.to_complex(), beta)))


def _as_complex_array(z) -> np.ndarray:
    if isinstance(z, ComplexScalar):
        z = z.to_complex()
    return np.asarray(z, dtype=complex)


def principal_arg(z) -> np.ndarray:
    """
    Argument im Hauptzweig (-pi, pi].

    Die negative reelle Achse (auch mit Imaginärteil -0.0) liefert +pi.
    """
    z = _as_complex_array(z)
    arg = np.arctan2(z.imag, z.real)
    return np.where((z.imag == 0.0) & (z.real < 0.0), np.pi, arg)


def principal_log(z) -> np.ndarray:
    """
    Log z = ln|z| + i*Arg z.

    Raises:
        BranchCutError: für z = 0
    """
    z = _as_complex_array(z)
    if np.any(z == 0):
        raise BranchCutError("logarithm of 0 is undefined")
    return np.log(np.abs(z)) + 1j * principal_arg(z)


def principal_power(z, beta: float) -> np.ndarray:
    """z^beta = exp(beta * Log z), z != 0"""
    return np.exp(beta * principal_log(z))


# ========== Riccati-Fluss ==========

def riccati_v_values(t, z, params: ModelParams) -> np.ndarray:
    """
    Vektorisierte Auswertung von v_t(z) (t und z werden gebroadcastet).

    Args:
        t: Zeit(en) >= 0
        z: Komplexe Startwerte != 0
        params: Modellparameter

    Returns:
        Komplexes Array v_t(z)

    Raises:
        ParameterError: bei z = 0, t < 0 oder ungültigen Parametern
        BranchCutError: wenn die innere Basis numerisch 0 wird
    """
    z = _as_complex_array(z)
    t = np.asarray(t, dtype=float)
    if np.any(z == 0):
        raise ParameterError("riccati_v requires z != 0")
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise ParameterError("riccati_v requires finite t >= 0")

    alpha = params.alpha
    growth_minus_one = np.expm1(params.kappa * t)
    drift_term = params.c * growth_minus_one
    start_term = principal_power(z, 1.0 - alpha) * (1.0 + growth_minus_one)
    inner = drift_term + start_term

    scale = np.abs(drift_term) + np.abs(start_term)
    if np.any(np.abs(inner) <= BRANCH_POINT_TOLERANCE * scale):
        raise BranchCutError("inner Riccati base is within 1e-14 of the branch point 0")

    v = principal_power(inner, params.outer_exponent)
    # v_0(z) = z exakt, ohne Rundung durch Hin- und Rückpotenz
    return np.where(t == 0.0, z, v)


def riccati_v(t: float, z: ComplexLike, params: ModelParams) -> ComplexScalar:
    """
    Lösung v_t(z) der verallgemeinerten Riccati-Gleichung.

    Args:
        t: Zeit >= 0
        z: Startwert != 0 (reell positiv: klassisches v_t(lambda))
        params: Modellparameter

    Returns:
        v_t(z) als ComplexScalar
    """
    params.validate()
    z = ComplexScalar.from_value(z)
    if z.is_zero:
        raise ParameterError("riccati_v requires z != 0")
    value = complex(riccati_v_values(t, z.to_complex(), params))
    return ComplexScalar.from_value(value)


def flow_breakpoints(t: float, z: np.ndarray, params: ModelParams) -> np.ndarray:
    """
    Panelgrenzen für s -> v_s(z) auf [0, t].

    Für großes |z| fällt v_s(z) innerhalb der Zeit
    s* = alpha*|z|^(1-alpha)/(alpha-1) von z auf die Größenordnung von d;
    die Zerlegung verdichtet sich bis unter s*.
    """
    alpha = params.alpha
    rho = float(np.max(np.abs(z)))
    transition = alpha * rho ** (1.0 - alpha) / (alpha - 1.0)
    levels = int(np.clip(np.ceil(np.log2(t / transition)) + 4, 4, 200))
    return geometric_breakpoints(0.0, t, levels)


def riccati_v_integral_values(t: float, z, params: ModelParams,
                              quad: QuadratureConfig) -> QuadratureResult:
    """
    Vektorisierte Quadratur von int_0^t v_s(z) ds für viele z.

    Die z werden in Blöcken der Größe quad.chunk_size gemeinsam integriert.

    Returns:
        QuadratureResult mit values der Form von z (1-D)
    """
    z = np.atleast_1d(_as_complex_array(z)).ravel()
    if t < 0 or not math.isfinite(t):
        raise ParameterError("riccati_v_integral requires finite t >= 0")
    if np.any(z == 0):
        raise ParameterError("riccati_v requires z != 0")
    if t == 0.0:
        return QuadratureResult(values=np.zeros(len(z), dtype=complex),
                                error_estimate=0.0, n_panels=0, n_evaluations=0)

    values = np.empty(len(z), dtype=complex)
    error = 0.0
    panels = 0
    evaluations = 0
    for start in range(0, len(z), quad.chunk_size):
        chunk = z[start:start + quad.chunk_size]
        column = chunk[:, None]
        result = integrate(lambda s: riccati_v_values(s[None, :], column, params),
                           flow_breakpoints(t, chunk, params), quad,
                           label="int_0^t v_s(z) ds")
        values[start:start + len(chunk)] = result.values
        error = max(error, result.error_estimate)
        panels += result.n_panels
        evaluations += result.n_evaluations
    return QuadratureResult(values=values, error_estimate=error,
                            n_panels=panels, n_evaluations=evaluations)


def riccati_v_integral(t: float, z: ComplexLike, params: ModelParams,
                       quad: QuadratureConfig) -> ComplexScalar:
    """
    Berechnet int_0^t v_s(z) ds durch adaptive Quadratur.

    Args:
        t: Obere Grenze >= 0
        z: Startwert != 0
        params: Modellparameter
        quad: Quadratur-Einstellungen

    Returns:
        Integralwert; für reelles z > 0 reell und positiv

    Raises:
        QuadratureError: mit erreichter Fehlerschätzung bei Nichtkonvergenz
    """
    params.validate()
    z = ComplexScalar.from_value(z)
    if z.is_zero:
        raise ParameterError("riccati_v requires z != 0")
    result = riccati_v_integral_values(t, z.to_complex(), params, quad)
    value = complex(result.values[0])
    if z.im == 0.0 and z.re > 0.0:
        value = complex(value.real, 0.0)
    return ComplexScalar.from_value(value)
