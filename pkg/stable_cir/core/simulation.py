"""
Simulation des Paares (Y, X) mit spektral positivem alpha-stabilem Treiber.

    dY = (a - b*Y) dt + Y_-^(1/alpha) dL
    dX = (m - theta*X) dt + sqrt(Y) dB

Schema: explizites Euler-Verfahren mit Positivteil-Projektion für Y. Jeder Pfad
besitzt eigene, aus (seed, Pfadindex) abgeleitete Philox-Ströme; ein Pfad hängt
daher weder von n_paths noch von block_size oder der Anzahl der Worker ab.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate as sp_integrate
from scipy import special

from ..exceptions import ParameterError, SimulationError
from ..models import ModelParams, PathEnsemble

logger = logging.getLogger(__name__)

# Stromindizes eines Pfades
ANGLE_STREAM = 0
WEIGHT_STREAM = 1
GAUSSIAN_STREAM = 2

# Zeitschritte, deren Zufallszahlen pro Pfad auf einmal gezogen werden
TIME_CHUNK = 256

ENSEMBLE_HEADER = ["path", "step", "t", "y", "x"]
SUMMARY_HEADER = ["t", "mean_y", "mean_x", "var_x"]


@dataclass(frozen=True)
class StableDriverSpec:
    """Kompensierter, total positiv schiefer alpha-stabiler Treiber mit E[e^{-lambda L_1}] = e^{lambda^alpha/alpha}"""

    alpha: float

    def __post_init__(self):
        if not 1.0 < self.alpha < 2.0:
            raise ParameterError("alpha must lie in open interval (1,2)")

    @property
    def skew(self) -> float:
        """Schiefe beta = 1 (nur Sprünge nach oben)"""
        return 1.0

    @property
    def levy_constant(self) -> float:
        """C_alpha = 1/(alpha*Gamma(-alpha))"""
        return 1.0 / (self.alpha * float(special.gamma(-self.alpha)))

    @property
    def scale_per_unit_time(self) -> float:
        """sigma(1) = (|cos(pi*alpha/2)|/alpha)^(1/alpha)"""
        return (abs(math.cos(math.pi * self.alpha / 2.0)) / self.alpha) ** (1.0 / self.alpha)

    def scale(self, dt: float) -> float:
        """sigma(dt) = dt^(1/alpha) * sigma(1)"""
        return dt ** (1.0 / self.alpha) * self.scale_per_unit_time

    def levy_density(self, z):
        """C_alpha * z^(-1-alpha) für z > 0"""
        return self.levy_constant * np.asarray(z, dtype=float) ** (-1.0 - self.alpha)

    def laplace_exponent(self, lam):
        """log E[exp(-lambda*L_1)] = lambda^alpha/alpha"""
        return np.asarray(lam, dtype=float) ** self.alpha / self.alpha

    def transform(self, dt: float, angle: np.ndarray, weight: np.ndarray) -> np.ndarray:
        """
        Chambers-Mallows-Stuck: Inkremente über dt aus gleichverteilten Winkeln
        auf (-pi/2, pi/2) und Exp(1)-Gewichten.
        """
        alpha = self.alpha
        tan_term = self.skew * math.tan(math.pi * alpha / 2.0)
        shift = math.atan(tan_term) / alpha
        factor = (1.0 + tan_term ** 2) ** (1.0 / (2.0 * alpha))

        rotated = alpha * (angle + shift)
        unit = (factor * np.sin(rotated) / np.cos(angle) ** (1.0 / alpha)
                * (np.cos(angle - rotated) / weight) ** ((1.0 - alpha) / alpha))
        return self.scale(dt) * unit

    def sample(self, dt: float, rng: np.random.Generator, size: int) -> np.ndarray:
        """
        Zieht size Inkremente L_{t+dt} - L_t (Chambers-Mallows-Stuck, beta = 1).

        Args:
            dt: Zeitschritt > 0
            rng: Zufallsgenerator
            size: Anzahl der Ziehungen

        Returns:
            Array der Inkremente (Erwartungswert 0)
        """
        angle = rng.uniform(-math.pi / 2.0, math.pi / 2.0, size)
        weight = rng.standard_exponential(size)
        return self.transform(dt, angle, weight)

def sample_stable_increment(dt: float, alpha: float, rng: np.random.Generator) -> float:
    """
    Eine Ziehung des Treiberinkrements über dt.

    Returns:
        Inkrement mit E[exp(-lambda*X)] = exp(dt*lambda^alpha/alpha)
    """
    if not (math.isfinite(dt) and dt > 0):
        raise ParameterError("dt must be positive")
    return float(StableDriverSpec(alpha).sample(dt, rng, 1)[0])


def laplace_exponent_from_levy_measure(lam: float, alpha: float) -> float:
    """
    int_0^inf (e^{-lambda*z} - 1 + lambda*z) * C_alpha * z^(-1-alpha) dz numerisch.

    Stimmt mit lambda^alpha/alpha überein; dient als Prüfung der Skalierung.
    """
    driver = StableDriverSpec(alpha)

    def integrand(z: float) -> float:
        # expm1 vermeidet Auslöschung für kleine lambda*z
        return float((math.expm1(-lam * z) + lam * z) * driver.levy_density(z))

    head, _ = sp_integrate.quad(integrand, 0.0, 1.0, limit=200)
    tail, _ = sp_integrate.quad(integrand, 1.0, np.inf, limit=200)
    return head + tail


def path_streams(seed: int, path: int) -> Tuple[np.random.Generator, ...]:
    """Unabhängige Ströme (Winkel, Gewicht, Gauß) des Pfades path"""
    return tuple(np.random.Generator(np.random.Philox(
        np.random.SeedSequence(seed, spawn_key=(path, stream))))
        for stream in (ANGLE_STREAM, WEIGHT_STREAM, GAUSSIAN_STREAM))


def draw_increments(streams: Sequence[Tuple[np.random.Generator, ...]], driver: StableDriverSpec,
                    dt: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nächste count Treiberinkremente und Gauß-Ziehungen je Pfad.

    Args:
        streams: Ströme je Pfad aus path_streams
        driver: Treiber
        dt: Schrittweite
        count: Anzahl der Zeitschritte

    Returns:
        (Sprünge, Rauschen), jeweils der Form (count, Pfade)
    """
    angle = np.stack([s[0].uniform(-math.pi / 2.0, math.pi / 2.0, count) for s in streams], axis=1)
    weight = np.stack([s[1].standard_exponential(count) for s in streams], axis=1)
    noise = np.stack([s[2].standard_normal(count) for s in streams], axis=1)
    return driver.transform(dt, angle, weight), noise


def record_schedule(n_steps: int, dt: float, record_stride: int = 1,
                    record_times: Optional[Sequence[float]] = None) -> np.ndarray:
    """
    Schrittindizes, an denen der Zustand gespeichert wird (immer inkl. 0 und n_steps).

    Args:
        n_steps: Anzahl der Zeitschritte
        dt: Schrittweite
        record_stride: Jeder wievielte Schritt (0 = nur Start und Ende)
        record_times: Explizite Zeitpunkte (überschreiben record_stride)
    """
    if record_times is not None:
        steps = [int(round(t / dt)) for t in record_times]
        if any(s < 0 or s > n_steps for s in steps):
            raise ParameterError("record times must lie within [0, horizon]")
    elif record_stride > 0:
        steps = list(range(0, n_steps + 1, record_stride))
    else:
        steps = []
    return np.array(sorted(set(steps) | {0, n_steps}), dtype=np.int64)


def _simulate_block(first_path: int, n_paths: int, y0: float, x0: float, n_steps: int,
                    dt: float, seed: int, params: ModelParams,
                    steps: np.ndarray) -> Tuple[np.ndarray, np.ndarray, int]:
    """Simuliert die Pfade first_path, ..., first_path + n_paths - 1"""
    streams = [path_streams(seed, first_path + i) for i in range(n_paths)]
    driver = StableDriverSpec(params.alpha)
    a, b, m, theta = params.a, params.b, params.m, params.theta
    root = 1.0 / params.alpha
    sqrt_dt = math.sqrt(dt)

    y = np.full(n_paths, float(y0))
    x = np.full(n_paths, float(x0))
    y_rec = np.empty((n_paths, len(steps)))
    x_rec = np.empty((n_paths, len(steps)))
    y_rec[:, 0], x_rec[:, 0] = y, x
    slot = 1
    projections = 0

    for chunk_start in range(1, n_steps + 1, TIME_CHUNK):
        count = min(TIME_CHUNK, n_steps + 1 - chunk_start)
        jumps, noise = draw_increments(streams, driver, dt, count)
        for j in range(count):
            k = chunk_start + j
            # Y_k^(1/alpha) und sqrt(Y_k) am Wert vor dem Sprung
            y_next = y + (a - b * y) * dt + y ** root * jumps[j]
            x = x + (m - theta * x) * dt + np.sqrt(y) * sqrt_dt * noise[j]
            negative = y_next < 0.0
            projections += int(negative.sum())
            y = np.where(negative, 0.0, y_next)

            if slot < len(steps) and steps[slot] == k:
                y_rec[:, slot], x_rec[:, slot] = y, x
                slot += 1

    if not (np.all(np.isfinite(y_rec)) and np.all(np.isfinite(x_rec))):
        raise SimulationError(f"non-finite state in paths {first_path}..{first_path + n_paths - 1}")
    return y_rec, x_rec, projections


def simulate_pair(y0: float, x0: float, horizon: float, dt: float, n_paths: int, seed: int,
                  params: ModelParams, record_stride: int = 1,
                  record_times: Optional[Sequence[float]] = None,
                  block_size: int = 4096, workers: int = 1) -> PathEnsemble:
    """
    Euler-Simulation eines Pfadensembles.

    Args:
        y0: Startwert von Y >= 0
        x0: Startwert von X
        horizon: Zeithorizont > 0 (wird auf ein Vielfaches von dt gerundet)
        dt: Schrittweite <= horizon
        n_paths: Anzahl der Pfade >= 1
        seed: 64-Bit Seed
        params: Modellparameter
        record_stride: Aufzeichnungsabstand in Schritten (0 = Start und Ende)
        record_times: Explizite Aufzeichnungszeitpunkte
        block_size: Pfade pro vektorisiertem Block (ändert das Ergebnis nicht)
        workers: Threads (ändert das Ergebnis nicht)

    Returns:
        PathEnsemble

    Raises:
        ParameterError: bei ungültigen Argumenten oder 1 - b*dt < 0
    """
    params.validate()
    if not (math.isfinite(y0) and y0 >= 0) or not math.isfinite(x0):
        raise ParameterError("initial state must be finite with y0 >= 0")
    if not (math.isfinite(horizon) and horizon > 0):
        raise ParameterError("horizon must be positive")
    if not (math.isfinite(dt) and 0 < dt <= horizon):
        raise ParameterError("dt must satisfy 0 < dt <= horizon")
    if 1.0 - params.b * dt < 0:
        raise ParameterError("dt too large: 1 - b*dt < 0 (drift overshoot)")
    if n_paths < 1 or block_size < 1:
        raise ParameterError("n_paths and block_size must be at least 1")
    if not 0 <= seed < 2 ** 64:
        raise ParameterError("seed must be a 64-bit unsigned integer")

    n_steps = max(1, int(round(horizon / dt)))
    step = horizon / n_steps
    if not math.isclose(step, dt, rel_tol=1e-9):
        logger.info(f"dt auf {step!r} angepasst, damit der Horizont getroffen wird")
    steps = record_schedule(n_steps, step, record_stride, record_times)

    blocks = [(start, min(block_size, n_paths - start)) for start in range(0, n_paths, block_size)]

    def run(block: Tuple[int, int]):
        first_path, size = block
        return _simulate_block(first_path, size, y0, x0, n_steps, step, seed, params, steps)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, blocks))
    else:
        results = [run(block) for block in blocks]

    y_paths = np.concatenate([r[0] for r in results], axis=0)
    x_paths = np.concatenate([r[1] for r in results], axis=0)
    projections = sum(r[2] for r in results)
    if projections:
        logger.info(f"{projections} Positivteil-Projektionen in {n_paths} Pfaden x {n_steps} Schritten")

    return PathEnsemble(dt=step, n_steps=n_steps, n_paths=n_paths, seed=seed,
                        times=steps * step, steps=steps, y_paths=y_paths, x_paths=x_paths,
                        params=params, n_projections=projections)


def empirical_atom(ensemble: PathEnsemble, threshold: float) -> float:
    """
    Anteil der Pfade mit Y_T < threshold (Schätzer für P(Z_T = 0)).

    Raises:
        ParameterError: wenn das Ensemble nicht mit a = 0 simuliert wurde
    """
    if ensemble.params.a != 0.0:
        raise ParameterError("empirical_atom requires an ensemble with a = 0")
    if not threshold > 0:
        raise ParameterError("threshold must be positive")
    return float(np.mean(ensemble.terminal_y < threshold))


def ensemble_rows(ensemble: PathEnsemble) -> List[list]:
    """CSV-Zeilen path,step,t,y,x"""
    rows = []
    for path in range(ensemble.n_paths):
        for slot, step in enumerate(ensemble.steps):
            rows.append([path, int(step), float(ensemble.times[slot]),
                         float(ensemble.y_paths[path, slot]), float(ensemble.x_paths[path, slot])])
    return rows


def summary_rows(ensemble: PathEnsemble) -> List[list]:
    """CSV-Zeilen t,mean_y,mean_x,var_x"""
    return [list(row) for row in ensemble.summary()]
