"""
Vektorisierte adaptive Gauß-Legendre-Quadratur.

Ein Integrand bildet ein 1-D Array von Stützstellen auf ein Array der Form
(K, M) ab, also K Integrale gleichzeitig. Jedes Panel wird einmal ganz und
einmal in zwei Hälften ausgewertet; die Differenz dient als Fehlerschätzung.
Panels mit zu großem Anteil am Gesamtfehler werden halbiert.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..config import QuadratureConfig
from ..exceptions import ParameterError, QuadratureError

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# Obergrenze für Stützstellen pro Integrand-Aufruf
DEFAULT_BATCH_POINTS = 8192


@dataclass
class QuadratureResult:
    """Ergebnis einer (vektoriellen) Quadratur"""
    values: np.ndarray
    error_estimate: float
    n_panels: int
    n_evaluations: int


@lru_cache(maxsize=8)
def gauss_legendre_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Knoten und Gewichte auf [-1, 1]"""
    nodes, weights = leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def geometric_breakpoints(lower: float, upper: float, levels: int) -> np.ndarray:
    """
    Zerlegung von [lower, upper], die sich geometrisch zu lower hin verdichtet.

    Args:
        lower: Linke Intervallgrenze (Ort der Singularität bzw. steilen Flanke)
        upper: Rechte Intervallgrenze
        levels: Anzahl der Halbierungsstufen

    Returns:
        [lower, lower + w*2^-levels, ..., lower + w/2, upper]
    """
    width = upper - lower
    fractions = 2.0 ** -np.arange(levels, 0, -1, dtype=float)
    return np.concatenate(([lower], lower + width * fractions, [upper]))


def _estimate(func: Integrand, lo: np.ndarray, hi: np.ndarray, order: int,
              batch_points: int) -> Tuple[np.ndarray, np.ndarray, bool]:
    """
    Wertet ganze Panels und deren Hälften aus.

    Returns:
        (whole, halves, scalar_output), whole und halves mit Form (K, P)
    """
    nodes, weights = gauss_legendre_rule(order)
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    quarter = 0.5 * half

    # Stützstellen: ganzes Panel, linke Hälfte, rechte Hälfte
    points = np.concatenate((
        center[:, None] + half[:, None] * nodes,
        (center - quarter)[:, None] + quarter[:, None] * nodes,
        (center + quarter)[:, None] + quarter[:, None] * nodes,
    ), axis=1)

    per_panel = 3 * order
    panels_per_batch = max(1, batch_points // per_panel)
    blocks = []
    scalar_output = False
    for start in range(0, len(lo), panels_per_batch):
        chunk = points[start:start + panels_per_batch].ravel()
        values = np.asarray(func(chunk))
        if values.ndim == 1:
            scalar_output = True
            values = values[None, :]
        blocks.append(values.reshape(values.shape[0], -1, per_panel))
    samples = np.concatenate(blocks, axis=1)

    if not np.all(np.isfinite(samples)):
        raise QuadratureError("Integrand liefert nicht-endliche Werte",
                              n_panels=len(lo))

    whole = half * (samples[:, :, :order] @ weights)
    halves = quarter * (samples[:, :, order:2 * order] @ weights
                        + samples[:, :, 2 * order:] @ weights)
    return whole, halves, scalar_output


def integrate(func: Integrand, breakpoints: np.ndarray, quad: QuadratureConfig,
              label: str = "Integral",
              batch_points: int = DEFAULT_BATCH_POINTS) -> QuadratureResult:
    """
    Integriert func adaptiv über die durch breakpoints gegebenen Panels.

    Args:
        func: Vektorisierter Integrand, Stützstellen (M,) -> (K, M) oder (M,)
        breakpoints: Streng aufsteigende Panelgrenzen
        quad: Toleranzen und Unterteilungsbudget
        label: Name für Log- und Fehlermeldungen
        batch_points: Maximale Stützstellen pro Aufruf von func

    Returns:
        QuadratureResult, values mit Form (K,) bzw. Skalar-Array bei 1-D Integrand

    Raises:
        QuadratureError: wenn max_subdivisions nicht ausreicht
    """
    edges = np.asarray(breakpoints, dtype=float)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise ParameterError(f"{label}: breakpoints must be strictly increasing")

    order = quad.gauss_order
    lo, hi = edges[:-1], edges[1:]
    whole, halves, scalar_output = _estimate(func, lo, hi, order, batch_points)
    evaluations = 3 * order * len(lo)
    subdivisions = 0

    while True:
        total = halves.sum(axis=1)
        tolerance = np.maximum(quad.abs_tol, quad.rel_tol * np.abs(total))
        panel_error = np.abs(halves - whole)
        scaled = (panel_error / tolerance[:, None]).max(axis=0)
        if scaled.sum() <= 1.0:
            break

        refine = scaled > 1.0 / len(scaled)
        n_refine = int(refine.sum())
        if subdivisions + n_refine > quad.max_subdivisions:
            achieved = float(panel_error.sum(axis=1).max())
            logger.warning(f"{label}: Unterteilungsbudget erschöpft "
                           f"(Fehler {achieved:.3e}, {len(lo)} Panels)")
            raise QuadratureError(f"{label} did not converge within "
                                  f"{quad.max_subdivisions} subdivisions",
                                  error_estimate=achieved, n_panels=len(lo))
        subdivisions += n_refine

        mid = 0.5 * (lo[refine] + hi[refine])
        new_lo = np.concatenate((lo[refine], mid))
        new_hi = np.concatenate((mid, hi[refine]))
        new_whole, new_halves, _ = _estimate(func, new_lo, new_hi, order, batch_points)
        evaluations += 3 * order * len(new_lo)

        keep = ~refine
        lo = np.concatenate((lo[keep], new_lo))
        hi = np.concatenate((hi[keep], new_hi))
        whole = np.concatenate((whole[:, keep], new_whole), axis=1)
        halves = np.concatenate((halves[:, keep], new_halves), axis=1)

    error = float(panel_error.sum(axis=1).max())
    logger.debug(f"{label}: {len(lo)} Panels, Fehlerschätzung {error:.3e}")
    values = total[0] if scalar_output else total
    return QuadratureResult(values=np.asarray(values), error_estimate=error,
                            n_panels=len(lo), n_evaluations=evaluations)
