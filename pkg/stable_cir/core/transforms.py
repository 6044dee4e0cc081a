"""
Geschlossene Transformationen des alpha-Wurzel-Prozesses Y.

    E[exp(-lambda*Y_t^y)] = exp(-a*int_0^t v_s(lambda) ds - y*v_t(lambda))
                          = phi2(t, lambda) * phi1(t, lambda, y)

phi2 ist die Transformation von Y_t^0, phi1 die des Prozesses Z^y mit a = 0.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..config import QuadratureConfig
from ..exceptions import ParameterError
from ..models import ModelParams
from .branch import (ComplexLike, ComplexScalar, principal_power, riccati_v_integral_values,
                     riccati_v_values)

logger = logging.getLogger(__name__)

# Unterhalb dieser Zeit divergiert d numerisch
MIN_LIMIT_TIME = 1e-12

LAPLACE_HEADER = ["t", "y0", "lambda", "value", "phi2", "phi1"]


@dataclass(frozen=True)
class TransformValue:
    """Wert einer Transformation samt Auswertungsstelle"""

    value: ComplexScalar
    t: float
    y0: float
    argument: ComplexScalar
    convention: str = "laplace"  # "laplace": E[e^{-u Y}], "fourier": E[e^{i u Y}]


def _check_state(t: float, y0: float) -> None:
    if not (math.isfinite(t) and t >= 0):
        raise ParameterError("t must be finite and nonnegative")
    if not (math.isfinite(y0) and y0 >= 0):
        raise ParameterError("y0 must be finite and nonnegative")


# ========== Funktionale Charakteristiken ==========

def functional_F(u: ComplexLike, params: ModelParams) -> complex:
    """F(u) = a*u"""
    return params.a * complex(ComplexScalar.from_value(u).to_complex())


def functional_R(u: ComplexLike, params: ModelParams) -> complex:
    """R(u) = -b*u + (-u)^alpha/alpha für Re u <= 0"""
    u = ComplexScalar.from_value(u).to_complex()
    if u == 0:
        return 0j
    return -params.b * u + complex(principal_power(-u, params.alpha)) / params.alpha


def exponent_values(t: float, y0: float, z, params: ModelParams,
                    quad: QuadratureConfig) -> Tuple[np.ndarray, float]:
    """
    Exponent -a*int_0^t v_s(z) ds - y0*v_t(z) für viele z != 0.

    Returns:
        (Exponenten, Fehlerschätzung des Integrals)
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    integral = riccati_v_integral_values(t, z, params, quad)
    exponent = -params.a * integral.values
    if y0 != 0.0:
        exponent = exponent - y0 * riccati_v_values(t, z, params)
    return exponent, params.a * integral.error_estimate


def phi_exponent(t: float, u: ComplexLike, params: ModelParams,
                 quad: QuadratureConfig) -> ComplexScalar:
    """phi(t, u) = -a*int_0^t v_s(-u) ds"""
    _check_state(t, 0.0)
    u = ComplexScalar.from_value(u)
    if u.is_zero:
        return ComplexScalar(0.0, 0.0)
    values, _ = exponent_values(t, 0.0, -u.to_complex(), params, quad)
    return ComplexScalar.from_value(complex(values[0]))


def psi_exponent(t: float, u: ComplexLike, params: ModelParams) -> ComplexScalar:
    """psi(t, u) = -v_t(-u)"""
    _check_state(t, 0.0)
    u = ComplexScalar.from_value(u)
    if u.is_zero:
        return ComplexScalar(0.0, 0.0)
    return ComplexScalar.from_value(-complex(riccati_v_values(t, -u.to_complex(), params)))


# ========== Laplace- und charakteristische Funktion ==========

def laplace_factors(t: float, y0: float, lam: float, params: ModelParams,
                    quad: QuadratureConfig) -> Tuple[float, float]:
    """
    Zerlegung der Laplace-Transformation in (phi2, phi1).

    Args:
        t: Zeit >= 0
        y0: Startwert >= 0
        lam: lambda >= 0
        params: Modellparameter (a = 0 erlaubt)
        quad: Quadratur-Einstellungen

    Returns:
        (exp(-a*int_0^t v_s ds), exp(-y0*v_t))
    """
    params.validate()
    _check_state(t, y0)
    if not (math.isfinite(lam) and lam >= 0):
        raise ParameterError("lambda must be finite and nonnegative")
    if lam == 0.0:
        return 1.0, 1.0

    integral = riccati_v_integral_values(t, lam, params, quad)
    phi2 = math.exp(-params.a * float(integral.values[0].real))
    phi1 = math.exp(-y0 * float(riccati_v_values(t, lam, params).real))
    return phi2, phi1


def laplace_y(t: float, y0: float, lam: float, params: ModelParams,
              quad: QuadratureConfig) -> float:
    """
    E[exp(-lambda*Y_t^y0)] = exp(-a*int_0^t v_s(lambda) ds - y0*v_t(lambda)).

    Returns:
        Wert in (0, 1]; lambda = 0 liefert exakt 1
    """
    params.validate()
    _check_state(t, y0)
    if not (math.isfinite(lam) and lam >= 0):
        raise ParameterError("lambda must be finite and nonnegative")
    if lam == 0.0:
        return 1.0
    exponent, _ = exponent_values(t, y0, lam, params, quad)
    return math.exp(float(exponent[0].real))


def charfn_exponent_values(t: float, y0: float, xis: np.ndarray, params: ModelParams,
                           quad: QuadratureConfig) -> np.ndarray:
    """log E[exp(i*xi*Y_t^y0)] für ein Array von xi != 0"""
    xis = np.asarray(xis, dtype=float)
    exponent, _ = exponent_values(t, y0, -1j * xis, params, quad)
    return exponent


def charfn_y(t: float, y0: float, xi: float, params: ModelParams,
             quad: QuadratureConfig) -> ComplexScalar:
    """
    Charakteristische Funktion E[exp(i*xi*Y_t^y0)] über v_s(-i*xi).

    Returns:
        Wert mit Betrag <= 1; xi = 0 liefert 1
    """
    params.validate()
    _check_state(t, y0)
    if not math.isfinite(xi):
        raise ParameterError("xi must be finite")
    if xi == 0.0:
        return ComplexScalar(1.0, 0.0)
    exponent = charfn_exponent_values(t, y0, np.array([xi]), params, quad)
    return ComplexScalar.from_value(complex(np.exp(exponent[0])))


def evaluate_transform(t: float, y0: float, argument: ComplexLike, params: ModelParams,
                       quad: QuadratureConfig, convention: str = "laplace") -> TransformValue:
    """
    Wertet E[exp(-u*Y)] ("laplace") oder E[exp(i*u*Y)] ("fourier") aus.

    Die Laplace-Konvention erlaubt komplexe u mit Re u >= 0.
    """
    params.validate()
    _check_state(t, y0)
    u = ComplexScalar.from_value(argument)
    if convention not in ("laplace", "fourier"):
        raise ParameterError(f"unknown transform convention {convention!r}")

    if u.is_zero:
        value = ComplexScalar(1.0, 0.0)
    else:
        z = u.to_complex() if convention == "laplace" else -1j * u.to_complex()
        if z.real < 0:
            raise ParameterError("Laplace argument needs Re(u) >= 0")
        exponent, _ = exponent_values(t, y0, z, params, quad)
        value = ComplexScalar.from_value(complex(np.exp(exponent[0])))
    return TransformValue(value=value, t=t, y0=y0, argument=u, convention=convention)


# ========== Grenzwert d, Atom und Momente ==========

def limit_d(t: float, params: ModelParams) -> float:
    """
    d = lim_{lambda->inf} v_t(lambda) = (c*(e^{kappa*t} - 1))^(1/(1-alpha)).

    Raises:
        ParameterError: für t < 1e-12 (d divergiert für t -> 0)
    """
    params.validate()
    if not (math.isfinite(t) and t >= MIN_LIMIT_TIME):
        raise ParameterError(f"limit_d requires t >= {MIN_LIMIT_TIME} (d diverges as t -> 0)")
    return (params.c * math.expm1(params.kappa * t)) ** params.outer_exponent


def atom_probability(t: float, y0: float, params: ModelParams) -> float:
    """
    P(Z_t^y0 = 0) = exp(-y0*d) für den Prozess mit a = 0.

    Raises:
        ParameterError: wenn a != 0
    """
    params.validate()
    if params.a != 0.0:
        raise ParameterError("atom_probability requires a = 0")
    _check_state(t, y0)
    if y0 == 0.0:
        return 1.0
    return math.exp(-y0 * limit_d(t, params))


def mean_y(t: float, y0: float, params: ModelParams) -> float:
    """E[Y_t] = y0*e^{-bt} + (a/b)*(1 - e^{-bt})"""
    params.validate()
    _check_state(t, y0)
    decay = math.exp(-params.b * t)
    return y0 * decay - (params.a / params.b) * math.expm1(-params.b * t)


def mean_x(t: float, x0: float, params: ModelParams) -> float:
    """
    E[X_t] = x0*e^{-theta*t} + (m/theta)*(1 - e^{-theta*t}); für theta = 0 x0 + m*t.

    Y geht nicht ein, da das Brownsche Integral zentriert ist.
    """
    params.validate()
    _check_state(t, 0.0)
    if not math.isfinite(x0):
        raise ParameterError("x0 must be finite")
    if params.theta == 0.0:
        return x0 + params.m * t
    return x0 * math.exp(-params.theta * t) - (params.m / params.theta) * math.expm1(-params.theta * t)


def laplace_rows(t: float, y0: float, lambdas: Sequence[float], params: ModelParams,
                 quad: QuadratureConfig) -> List[list]:
    """Zeilen für das laplace-Artefakt, eine je lambda"""
    rows = []
    for lam in lambdas:
        phi2, phi1 = laplace_factors(t, y0, lam, params, quad)
        rows.append([t, y0, lam, phi2 * phi1, phi2, phi1])
    return rows
