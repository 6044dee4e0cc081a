"""
Übergangsdichte des alpha-Wurzel-Prozesses.

Zwei unabhängige Darstellungen:

    Fourier:    f(x) = (1/pi) * int_0^Xi Re(e^{-i*x*xi} * phi(xi)) dxi
    Reelle Achse (nur y0 = 0):
                f(x) = (1/pi) * int_0^inf e^{-x*z} * (-Im exp(-a*int_0^t v_s(-z) ds)) dz

v_s(-z) wird als Grenzwert aus der oberen Halbebene ausgewertet (Arg = +pi).
Die Verteilungsfunktion ist die analytische Stammfunktion der
Fourier-Darstellung.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import integrate as sp_integrate
from scipy import optimize, special

from ..config import QuadratureConfig
from ..exceptions import DensityEvaluationError, ParameterError, QuadratureError
from ..models import DensityGrid, EnvelopeFit, ModelParams, Representation
from .quadrature import geometric_breakpoints, integrate
from .transforms import charfn_exponent_values, exponent_values

logger = logging.getLogger(__name__)

# Standard-Fenster für die Anpassung der Hüllkurve von |phi|
ENVELOPE_WINDOW = (10.0, 1e3)
ENVELOPE_SAMPLES = 41

# Innere Integrale werden um diesen Faktor genauer gerechnet als das äußere
INNER_TOLERANCE_FACTOR = 1e-2

# Geometrische Verfeinerungsstufen zur 0 hin (reelle Achse)
REAL_AXIS_LEVELS = 50

CSV_HEADER = ["x", "f", "representation", "norm_defect"]
CDF_HEADER = ["x", "cdf"]


@dataclass(frozen=True)
class GrowthFit:
    """Schranke |exp(-a*int v_s(-z) ds)| <= exp(a*C3 + a*C4*z^q) entlang der reellen Achse"""

    c3: float
    c4: float
    exponent: float


def _check_density_args(t: float, y0: float, params: ModelParams) -> None:
    params.require_density()
    if not (math.isfinite(t) and t > 0):
        raise ParameterError("density requires t > 0")
    if not (math.isfinite(y0) and y0 >= 0):
        raise ParameterError("y0 must be finite and nonnegative")


def _as_abscissae(xs, strictly_positive: bool = False) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if xs.ndim != 1 or not np.all(np.isfinite(xs)):
        raise ParameterError("abscissae must be finite")
    if strictly_positive and np.any(xs <= 0):
        raise ParameterError("real-axis representation requires x > 0")
    if np.any(xs < 0):
        raise ParameterError("abscissae must be nonnegative")
    return xs


# ========== Hüllkurve und Frequenzabschneidung ==========

def envelope_tail(fit: EnvelopeFit, cutoff: float) -> float:
    """
    int_cutoff^inf c1*exp(-c2*xi^q) dxi über die unvollständige Gammafunktion.
    """
    q, c2 = fit.exponent, fit.c2
    shape = 1.0 / q
    return float(fit.c1 * special.gamma(shape) * special.gammaincc(shape, c2 * cutoff ** q)
                 / (q * c2 ** shape))


def charfn_envelope(t: float, y0: float, params: ModelParams, quad: QuadratureConfig,
                    window: Tuple[float, float] = ENVELOPE_WINDOW,
                    n_samples: int = ENVELOPE_SAMPLES) -> EnvelopeFit:
    """
    Passt log|phi(xi)| = log c1 - c2*xi^(2-alpha) per kleinster Quadrate an.

    c1 wird anschließend so angehoben, dass die Hüllkurve alle Stichproben
    im Fenster majorisiert.

    Raises:
        QuadratureError: wenn die angepasste Abklingrate nicht positiv ist
    """
    _check_density_args(t, y0, params)
    q = 2.0 - params.alpha
    xis = np.geomspace(window[0], window[1], n_samples)
    log_modulus = charfn_exponent_values(t, y0, xis, params, quad).real
    u = xis ** q

    slope, _ = np.polyfit(u, log_modulus, 1)
    c2 = -float(slope)
    if not c2 > 0:
        raise QuadratureError(f"envelope fit produced nonpositive decay rate c2={c2:.3e}")
    c1 = float(np.exp(np.max(log_modulus + c2 * u)))

    fit = EnvelopeFit(c1=c1, c2=c2, exponent=q, xi_cutoff=window[1],
                      tail_estimate=0.0, auto=True, samples=n_samples)
    fit = replace(fit, tail_estimate=envelope_tail(fit, window[1]))
    logger.debug(f"Hüllkurve: c1={c1:.4g}, c2={c2:.4g}, q={q:.3f}")
    return fit


def choose_xi_truncation(t: float, y0: float, params: ModelParams,
                         quad: QuadratureConfig) -> EnvelopeFit:
    """
    Bestimmt die Frequenzgrenze Xi.

    Automatisch: kleinstes Xi mit Resttail/pi < abs_tol/10.
    Vorgegeben (quad.xi_truncation): Prüfung, dass der Resttail/pi <= abs_tol ist.

    Returns:
        EnvelopeFit mit xi_cutoff und tail_estimate (Beitrag zur Dichte)

    Raises:
        QuadratureError: wenn der Resttail die Toleranz überschreitet
    """
    fit = charfn_envelope(t, y0, params, quad)

    if quad.xi_truncation is not None:
        cutoff = float(quad.xi_truncation)
        tail = envelope_tail(fit, cutoff) / math.pi
        if tail > quad.abs_tol:
            raise QuadratureError(
                f"frequency cutoff {cutoff:g} leaves truncation tail above abs_tol",
                error_estimate=tail)
        return replace(fit, xi_cutoff=cutoff, tail_estimate=tail, auto=False)

    target = quad.abs_tol / 10.0 * math.pi
    upper = 1.0
    while envelope_tail(fit, upper) > target:
        upper *= 2.0
        if upper > 2.0 ** 40:
            raise QuadratureError("no frequency cutoff reaches the requested tolerance")
    if upper == 1.0:
        cutoff = 1.0
    else:
        cutoff = optimize.brentq(lambda xi: envelope_tail(fit, xi) - target,
                                 upper / 2.0, upper, xtol=1e-6 * upper)
    tail = envelope_tail(fit, cutoff) / math.pi
    logger.info(f"Frequenzgrenze Xi={cutoff:.4g} (c2={fit.c2:.4g}, Tail={tail:.2e})")
    return replace(fit, xi_cutoff=float(cutoff), tail_estimate=tail, auto=True)


def _frequency_edges(cutoff: float, x_max: float) -> np.ndarray:
    """Panels der Breite ~2*pi/x_max (eine Periode von e^{-i*x*xi})"""
    width = 2.0 * math.pi / max(x_max, 1.0)
    n_panels = max(1, int(math.ceil(cutoff / width)))
    return np.linspace(0.0, cutoff, n_panels + 1)


# ========== Fourier-Darstellung ==========

def density_fourier_values(t: float, y0: float, xs, params: ModelParams, quad: QuadratureConfig,
                           envelope: Optional[EnvelopeFit] = None) -> Tuple[np.ndarray, float]:
    """
    Fourier-Inversion für ein Array von Abszissen.

    Returns:
        (Dichtewerte, Fehlerschätzung inklusive Abschneidetail)
    """
    _check_density_args(t, y0, params)
    xs = _as_abscissae(xs)
    fit = envelope or choose_xi_truncation(t, y0, params, quad)
    inner = quad.scaled(INNER_TOLERANCE_FACTOR)

    def integrand(xi: np.ndarray) -> np.ndarray:
        exponent = charfn_exponent_values(t, y0, xi, params, inner)
        return np.exp(exponent[None, :] - 1j * np.outer(xs, xi)).real / math.pi

    result = integrate(integrand, _frequency_edges(fit.xi_cutoff, float(xs.max())), quad,
                       label="Fourier-Dichte")
    return np.atleast_1d(result.values).astype(float), result.error_estimate + fit.tail_estimate


def density_fourier(t: float, y0: float, x: float, params: ModelParams,
                    quad: QuadratureConfig) -> float:
    """
    Übergangsdichte f_{Y_t^y0}(x) per Fourier-Inversion.

    Args:
        t: Zeit > 0
        y0: Startwert >= 0
        x: Abszisse >= 0 (x = 0 liefert den Formelwert)
        params: Modellparameter mit a > 0
        quad: Quadratur-Einstellungen

    Returns:
        Dichtewert
    """
    values, _ = density_fourier_values(t, y0, [x], params, quad)
    return float(values[0])


# ========== Darstellung auf der reellen Achse ==========

def _real_axis_exponent(t: float, z: np.ndarray, params: ModelParams,
                        quad: QuadratureConfig) -> np.ndarray:
    """-a*int_0^t v_s(-z) ds mit Arg(-z) = +pi"""
    negative_axis = np.asarray(-z, dtype=float) + 0.0j
    exponent, _ = exponent_values(t, 0.0, negative_axis, params, quad)
    return exponent


def real_axis_growth(t: float, params: ModelParams, quad: QuadratureConfig,
                     window: Tuple[float, float] = ENVELOPE_WINDOW,
                     n_samples: int = ENVELOPE_SAMPLES) -> GrowthFit:
    """
    Passt Re(-a*int_0^t v_s(-z) ds) <= a*C3 + a*C4*z^(2-alpha) an.

    C3 wird so gewählt, dass die Schranke auf allen Stichproben gilt.
    """
    params.require_density()
    q = 2.0 - params.alpha
    zs = np.geomspace(window[0], window[1], n_samples)
    log_modulus = _real_axis_exponent(t, zs, params, quad).real / params.a
    u = zs ** q
    slope, _ = np.polyfit(u, log_modulus, 1)
    c4 = max(float(slope), 0.0)
    c3 = float(np.max(log_modulus - c4 * u))
    return GrowthFit(c3=c3, c4=c4, exponent=q)


def _real_axis_cutoff(x_min: float, growth: GrowthFit, params: ModelParams,
                      target: float) -> float:
    """Kleinste Zweierpotenz-Grenze Z, ab der der Integrand unter target fällt"""
    a, q = params.a, growth.exponent
    cutoff = 32.0 / x_min
    for _ in range(60):
        log_envelope = -x_min * cutoff + a * growth.c3 + a * growth.c4 * cutoff ** q
        decaying = x_min > 2.0 * a * growth.c4 * q * cutoff ** (q - 1.0)
        if decaying and log_envelope - math.log(x_min) < math.log(target):
            return cutoff
        cutoff *= 2.0
    raise QuadratureError("real-axis integrand does not decay within the search range")


def density_real_axis_values(t: float, xs, params: ModelParams, quad: QuadratureConfig,
                             growth: Optional[GrowthFit] = None) -> Tuple[np.ndarray, float]:
    """
    Laplace-artige Darstellung von f_{Y_t^0} für ein Array von x > 0.

    Returns:
        (Dichtewerte, Fehlerschätzung)
    """
    _check_density_args(t, 0.0, params)
    xs = _as_abscissae(xs, strictly_positive=True)
    inner = quad.scaled(INNER_TOLERANCE_FACTOR)
    growth = growth or real_axis_growth(t, params, inner)
    cutoff = _real_axis_cutoff(float(xs.min()), growth, params, quad.abs_tol / 10.0 * math.pi)

    def integrand(z: np.ndarray) -> np.ndarray:
        modulus_phase = np.exp(_real_axis_exponent(t, z, params, inner))
        return np.exp(-np.outer(xs, z)) * (-modulus_phase.imag)[None, :] / math.pi

    result = integrate(integrand, geometric_breakpoints(0.0, cutoff, REAL_AXIS_LEVELS), quad,
                       label="Dichte (reelle Achse)")
    return np.atleast_1d(result.values).astype(float), result.error_estimate


def density_real_axis(t: float, y0: float, x: float, params: ModelParams,
                      quad: QuadratureConfig) -> float:
    """
    Übergangsdichte über die Darstellung auf der reellen Achse.

    Args:
        t: Zeit > 0
        y0: Muss 0 sein
        x: Abszisse > 0
        params: Modellparameter mit a > 0
        quad: Quadratur-Einstellungen

    Raises:
        ParameterError: für y0 != 0 oder x <= 0
    """
    if y0 != 0.0:
        raise ParameterError("real-axis representation requires y0 = 0")
    values, _ = density_real_axis_values(t, [x], params, quad)
    return float(values[0])


# ========== Verteilungsfunktion ==========

def cdf_values(t: float, y0: float, xs, params: ModelParams, quad: QuadratureConfig,
               envelope: Optional[EnvelopeFit] = None) -> Tuple[np.ndarray, float]:
    """
    P(Y_t^y0 <= x) = (1/pi) * int_0^Xi Re(phi(xi) * (1 - e^{-i*x*xi}) / (i*xi)) dxi.

    Returns:
        (Werte in [0, 1], Fehlerschätzung)
    """
    _check_density_args(t, y0, params)
    xs = _as_abscissae(xs)
    fit = envelope or choose_xi_truncation(t, y0, params, quad)
    inner = quad.scaled(INNER_TOLERANCE_FACTOR)

    def integrand(xi: np.ndarray) -> np.ndarray:
        phi = np.exp(charfn_exponent_values(t, y0, xi, params, inner))
        phase = np.outer(xs, xi)
        # (1 - e^{-i*theta})/(i*xi) = (sin(theta) - 2i*sin^2(theta/2))/xi
        kernel = (np.sin(phase) - 2j * np.sin(0.5 * phase) ** 2) / xi[None, :]
        return (phi[None, :] * kernel).real / math.pi

    result = integrate(integrand, _frequency_edges(fit.xi_cutoff, float(xs.max())), quad,
                       label="Verteilungsfunktion")
    values = np.clip(np.atleast_1d(result.values).astype(float), 0.0, 1.0)
    # Tail von |phi| * |kernel| <= |phi| * 2/Xi
    tail = fit.tail_estimate * 2.0 / fit.xi_cutoff
    return values, result.error_estimate + tail


def cdf_y(t: float, y0: float, x: float, params: ModelParams, quad: QuadratureConfig) -> float:
    """
    Verteilungsfunktion von Y_t^y0 an der Stelle x.

    Returns:
        Wert in [0, 1]; x = 0 liefert 0 (kein Atom für a > 0)
    """
    values, _ = cdf_values(t, y0, [x], params, quad)
    return float(values[0])


# ========== Gitterauswertung ==========

def _locate_failure(evaluate: Callable[[np.ndarray], object], xs: np.ndarray,
                    cause: Exception) -> DensityEvaluationError:
    """Wertet punktweise aus, um die erste fehlschlagende Abszisse zu finden"""
    for x in xs:
        try:
            evaluate(np.array([x]))
        except QuadratureError as e:
            return DensityEvaluationError(float(x), e)
    return DensityEvaluationError(float(xs[-1]), cause)


def density_grid(t: float, y0: float, xs, params: ModelParams, quad: QuadratureConfig,
                 representation: Representation = Representation.FOURIER) -> DensityGrid:
    """
    Wertet die gewählte Darstellung auf einem Gitter aus und schätzt den Normierungsfehler.

    Die Gittermasse (Simpson) wird um Kopf- und Restmasse aus der
    Verteilungsfunktion ergänzt.

    Args:
        t: Zeit > 0
        y0: Startwert >= 0 (0 für die reelle Achse)
        xs: Aufsteigende, nichtnegative Abszissen
        params: Modellparameter mit a > 0
        quad: Quadratur-Einstellungen
        representation: fourier oder real_axis

    Returns:
        DensityGrid

    Raises:
        DensityEvaluationError: mit der fehlschlagenden Abszisse
    """
    _check_density_args(t, y0, params)
    xs = _as_abscissae(xs, strictly_positive=representation is Representation.REAL_AXIS)
    if len(xs) > 1 and np.any(np.diff(xs) <= 0):
        raise ParameterError("abscissae must be strictly increasing")
    if representation is Representation.REAL_AXIS and y0 != 0.0:
        raise ParameterError("real-axis representation requires y0 = 0")

    envelope = choose_xi_truncation(t, y0, params, quad)
    if representation is Representation.FOURIER:
        def evaluate(points: np.ndarray):
            return density_fourier_values(t, y0, points, params, quad, envelope)
    else:
        growth = real_axis_growth(t, params, quad.scaled(INNER_TOLERANCE_FACTOR))

        def evaluate(points: np.ndarray):
            return density_real_axis_values(t, points, params, quad, growth)

    try:
        values, _ = evaluate(xs)
    except QuadratureError as e:
        raise _locate_failure(evaluate, xs, e) from e

    boundary_flag = bool(xs[0] == 0.0)
    if boundary_flag:
        logger.info("x = 0 im Gitter: Formelwert, die Dichte ist dort per Konvention 0")

    if len(xs) >= 3:
        edge_cdf, _ = cdf_values(t, y0, [xs[0], xs[-1]], params, quad, envelope)
        head_mass = 0.0 if boundary_flag else float(edge_cdf[0])
        tail_mass = 1.0 - float(edge_cdf[1])
        grid_mass = float(sp_integrate.simpson(values, x=xs))
        norm_defect = abs(grid_mass + head_mass + tail_mass - 1.0)
    else:
        head_mass, tail_mass, norm_defect = 0.0, 0.0, float("nan")

    negative = values[values < -1e-6]
    if negative.size:
        logger.warning(f"{negative.size} Dichtewerte unter -1e-6 (min {negative.min():.3e})")

    return DensityGrid(t=t, y0=y0, xs=xs, values=values, representation=representation,
                       norm_defect=norm_defect, params=params, head_mass=head_mass,
                       tail_mass=tail_mass, boundary_flag=boundary_flag)


def density_rows(grid: DensityGrid) -> List[list]:
    """CSV-Zeilen x,f,representation,norm_defect"""
    return [[float(x), float(f), grid.representation.value, float(grid.norm_defect)]
            for x, f in zip(grid.xs, grid.values)]


def cdf_rows(xs: np.ndarray, values: np.ndarray) -> List[list]:
    """CSV-Zeilen x,cdf"""
    return [[float(x), float(c)] for x, c in zip(xs, values)]
