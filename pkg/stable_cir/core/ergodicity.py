"""
Foster-Lyapunov-Funktion, Driftzertifikat und empirische Ergodizitätsdiagnosen.

V(y, x) = beta*y + h(x) mit h(x) = F(|x|) + 2 - F(2), F(x) = int_0^x rho,
wobei rho der Smootherstep-Übergang von 0 (x <= 1) auf 1 (x >= 2) ist.
Da V affin in y ist, verschwindet das Sprungintegral des Generators und

    A V(y, x) = (a - b*y)*beta + (m - theta*x)*h'(x) + y*h''(x)/2.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate as sp_integrate
from scipy import stats

from ..config import QuadratureConfig, SimulationConfig
from ..exceptions import ParameterError
from ..models import (BoundsReport, DriftCheckResult, GridCertificate, LyapunovSpec, ModelParams,
                      TvDecayReport)
from .branch import riccati_v_integral_values
from .simulation import StableDriverSpec, simulate_pair

logger = logging.getLogger(__name__)

# sup h'' = max 30u^2(1-u)^2 = 1.875 bei u = 1/2
SUP_H_SECOND = 1.875
# F(2) = int_1^2 rho
F_AT_TWO = 0.5
BETA_MARGIN = 1.1

# Punkte pro Einheit für das Maximum über |x| <= 2
INNER_REGION_POINTS = 4001

DEFAULT_TRUNCATION = 1e24
# Sprünge darunter gehen über die Taylor-Näherung zweiter Ordnung ein
SMALL_JUMP = 1e-4

# Quantilfenster und Belegungsschwelle des TV-Histogramms
TV_QUANTILE_WINDOW = (0.005, 0.995)
SPARSE_BIN_COUNT = 10

# Fenster um +-pi/2, in dem der Realteil regressiert wird
REAL_PART_WINDOW = 0.25

DRIFT_HEADER = ["y0", "x0", "t", "lhs", "rhs", "pass"]
TV_HEADER = ["t", "tv", "se_proxy"]
BOUNDS_HEADER = ["rho", "value", "ratio"]


# ========== Mollifier und h ==========

def mollifier(x):
    """rho(x): 0 für x <= 1, 1 für x >= 2, dazwischen 6u^5 - 15u^4 + 10u^3"""
    u = np.clip(np.asarray(x, dtype=float) - 1.0, 0.0, 1.0)
    return u ** 3 * (10.0 - 15.0 * u + 6.0 * u ** 2)


def mollifier_derivative(x):
    """rho'(x) = 30u^2(1-u)^2 auf [1, 2], sonst 0"""
    u = np.clip(np.asarray(x, dtype=float) - 1.0, 0.0, 1.0)
    return 30.0 * u ** 2 * (1.0 - u) ** 2


def mollifier_integral(x):
    """F(x) = int_0^x rho: 0, u^6 - 3u^5 + 2.5u^4 bzw. x - 1.5"""
    x = np.asarray(x, dtype=float)
    u = np.clip(x - 1.0, 0.0, 1.0)
    inner = u ** 4 * (2.5 - 3.0 * u + u ** 2)
    return np.where(x >= 2.0, x - 2.0 + F_AT_TWO, inner)


def h_value(x):
    """h(x) = F(|x|) + 2 - F(2); h(x) = |x| für |x| >= 2"""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    return np.where(ax >= 2.0, ax, mollifier_integral(ax) + 2.0 - F_AT_TWO)


def h_first(x):
    x = np.asarray(x, dtype=float)
    return mollifier(np.abs(x)) * np.sign(x)


def h_second(x):
    return mollifier_derivative(np.abs(np.asarray(x, dtype=float)))


def lyapunov_value(y, x, spec: LyapunovSpec):
    """V(y, x) = beta*y + h(x)"""
    return spec.beta * np.asarray(y, dtype=float) + h_value(x)


# ========== Generator ==========

def generator_on_V(y, x, spec: LyapunovSpec, params: ModelParams):
    """
    Geschlossene Form von A V.

    Args:
        y: Zustand(e) y >= 0
        x: Zustand(e) x
        spec: beta, c und M der Lyapunov-Funktion
        params: Modellparameter

    Returns:
        (a - b*y)*beta + (m - theta*x)*h'(x) + y*h''(x)/2
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    result = ((params.a - params.b * y) * spec.beta
              + (params.m - params.theta * x) * h_first(x)
              + 0.5 * y * h_second(x))
    return float(result) if result.ndim == 0 else result


def truncation_leakage(y: float, spec: LyapunovSpec, params: ModelParams,
                       truncation: float = DEFAULT_TRUNCATION) -> float:
    """
    Schranke beta*y*C_alpha*(R - y)^(1-alpha)/(alpha - 1) für das Sprungintegral
    der abgeschnittenen Funktion im Bereich y < R.
    """
    driver = StableDriverSpec(params.alpha)
    return (spec.beta * y * driver.levy_constant * (truncation - y) ** (1.0 - params.alpha)
            / (params.alpha - 1.0))


def levy_jump_term(func: Callable[[float], float], slope: float, curvature: float, y: float,
                   alpha: float, breakpoints: Sequence[float] = ()) -> float:
    """
    Sprunganteil des Generators für eine Funktion f von y allein:

        y * int_0^inf (f(y+z) - f(y) - z*f'(y)) * C_alpha * z^(-1-alpha) dz

    Sprünge z < SMALL_JUMP gehen über die Taylor-Näherung f''(y)*z^2/2 ein,
    der Rest wird stückweise mit quad integriert (höchstens drei Dekaden je
    Teilstück, zusätzlich an den Bruchstellen geteilt).

    Args:
        func: f
        slope: f'(y)
        curvature: f''(y)
        y: Zustand >= 0
        alpha: Stabilitätsindex
        breakpoints: Sprunghöhen, an denen f den Charakter wechselt

    Returns:
        Sprunganteil
    """
    driver = StableDriverSpec(alpha)
    base = func(y)

    def integrand(z: float) -> float:
        return (func(y + z) - base - z * slope) * z ** (-1.0 - alpha)

    edges = sorted({SMALL_JUMP, 1.0, *(float(p) for p in breakpoints if p > SMALL_JUMP)})
    knots = [edges[0]]
    for lo, hi in zip(edges, edges[1:]):
        pieces = max(1, math.ceil(math.log10(hi / lo) / 3.0))
        knots.extend(float(k) for k in np.geomspace(lo, hi, pieces + 1)[1:])

    total = 0.5 * curvature * SMALL_JUMP ** (2.0 - alpha) / (2.0 - alpha)
    for lo, hi in zip(knots, knots[1:]):
        total += sp_integrate.quad(integrand, lo, hi, limit=200)[0]
    total += sp_integrate.quad(integrand, knots[-1], np.inf, limit=200)[0]
    return y * driver.levy_constant * total


def generator_numeric(y: float, x: float, spec: LyapunovSpec, params: ModelParams,
                      truncation: float = DEFAULT_TRUNCATION) -> Tuple[float, float]:
    """
    Voller Generator auf V_R(y, x) = beta*psi_R(y) + h(x) mit psi_R(y) = y - R*F(y/R).

    Der lokale Teil nutzt psi_R', psi_R'' und h', h''; der Sprunganteil
    beta * levy_jump_term(psi_R) wird über alle Sprunghöhen numerisch integriert.
    Für y + z <= R ist psi_R affin und der Integrand hebt sich auf.

    Args:
        y: Zustand mit 0 <= y < R (Abschneidung inaktiv)
        x: Zustand x
        truncation: R

    Returns:
        (A V_R(y, x), Sprunganteil)
    """
    if not 0.0 <= y < truncation:
        raise ParameterError("generator_numeric requires 0 <= y < truncation")

    def psi(u: float) -> float:
        return u - truncation * float(mollifier_integral(u / truncation))

    slope = 1.0 - float(mollifier(y / truncation))
    curvature = -float(mollifier_derivative(y / truncation)) / truncation
    local = ((params.a - params.b * y) * spec.beta * slope
             + (params.m - params.theta * x) * float(h_first(x))
             + 0.5 * y * float(h_second(x)))
    jump = spec.beta * levy_jump_term(psi, slope, curvature, y, params.alpha,
                                      breakpoints=(truncation - y, 2.0 * truncation - y))
    return local + jump, jump


# ========== Konstanten beta, c, M ==========

def _inner_region_bound(c: float, params: ModelParams) -> float:
    """
    Obere Schranke von g(x) = (m - theta*x)*h'(x) + c*h(x) auf [-2, 2]:
    Gittermaximum plus Lipschitz-Konstante mal halbe Gitterweite.
    """
    xs = np.linspace(-2.0, 2.0, INNER_REGION_POINTS)
    g = (params.m - params.theta * xs) * h_first(xs) + c * h_value(xs)
    spacing = xs[1] - xs[0]
    lipschitz = params.theta + c + (abs(params.m) + 2.0 * params.theta) * SUP_H_SECOND
    return float(g.max()) + lipschitz * spacing / 2.0


def choose_beta_c_M(params: ModelParams,
                    spec_template: Optional[LyapunovSpec] = None) -> LyapunovSpec:
    """
    Wählt c = min(b/2, theta), beta >= sup h''/b und eine zertifizierte Schranke M.

    Args:
        params: Modellparameter mit theta > 0
        spec_template: Optional; dessen beta wird als Untergrenze übernommen

    Returns:
        LyapunovSpec mit A V <= -c*V + M auf dem ganzen Zustandsraum

    Raises:
        ParameterError: wenn theta <= 0
    """
    params.require_ergodicity()
    c = min(params.b / 2.0, params.theta)
    beta = BETA_MARGIN * SUP_H_SECOND / params.b
    if spec_template is not None:
        beta = max(beta, spec_template.beta)

    # y-Koeffizient von A V + c V ist <= 0, das Supremum liegt bei y = 0
    outer = abs(params.m) + 2.0 * (c - params.theta)
    M = params.a * beta + max(_inner_region_bound(c, params), outer)
    logger.debug(f"Lyapunov: beta={beta:.4g}, c={c:.4g}, M={M:.4g}")
    return LyapunovSpec(beta=beta, c=c, M=M)


def certify_grid(spec: LyapunovSpec, params: ModelParams,
                 y_range: Tuple[float, float] = (0.0, 50.0),
                 x_range: Tuple[float, float] = (-50.0, 50.0),
                 n_points: int = 200) -> GridCertificate:
    """
    Prüft A V + c V <= M auf einem Gitter sowie die exakten Vorzeichenbedingungen
    außerhalb (Koeffizient von y und Steigung für |x| >= 2).
    """
    ys = np.linspace(y_range[0], y_range[1], n_points)
    xs = np.linspace(x_range[0], x_range[1], n_points)
    yy, xx = np.meshgrid(ys, xs, indexing="ij")
    excess = generator_on_V(yy, xx, spec, params) + spec.c * lyapunov_value(yy, xx, spec) - spec.M

    y_coefficient = (spec.c - params.b) * spec.beta + 0.5 * SUP_H_SECOND
    certificate = GridCertificate(max_excess=float(excess.max()), y_coefficient=y_coefficient,
                                  tail_slope=spec.c - params.theta, grid_shape=yy.shape)
    if not certificate.passed:
        logger.warning(f"Driftzertifikat verletzt: {certificate}")
    return certificate


# ========== Monte-Carlo-Prüfungen ==========

def drift_mc_check(y0: float, x0: float, t: float, spec: LyapunovSpec, params: ModelParams,
                   sim: SimulationConfig) -> DriftCheckResult:
    """
    Vergleicht E[V(Y_t, X_t)] mit e^{-ct}*V(y0, x0) + M/c.

    Returns:
        DriftCheckResult (passed: lhs <= rhs + 3*SE + Bias-Zuschlag)
    """
    params.require_ergodicity()
    v0 = float(lyapunov_value(y0, x0, spec))
    rhs = math.exp(-spec.c * t) * v0 + spec.M / spec.c
    if t == 0.0:
        return DriftCheckResult(y0=y0, x0=x0, t=t, lhs=v0, rhs=rhs,
                                standard_error=0.0, bias_allowance=0.0)

    ensemble = simulate_pair(y0, x0, t, min(sim.dt, t), sim.n_paths, sim.seed, params,
                             record_stride=0, block_size=sim.block_size, workers=sim.workers)
    values = lyapunov_value(ensemble.terminal_y, ensemble.terminal_x, spec)
    lhs = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
    result = DriftCheckResult(y0=y0, x0=x0, t=t, lhs=lhs, rhs=rhs, standard_error=se,
                              bias_allowance=sim.bias_allowance(ensemble.dt))
    logger.info(f"Drift-Check t={t}: lhs={lhs:.4f}, rhs={rhs:.4f}, SE={se:.2e}")
    return result


def shared_edges(pooled: np.ndarray, max_bins: int) -> np.ndarray:
    """
    Innere Bin-Grenzen nach Freedman-Diaconis auf dem zentralen Quantilfenster.

    Werte außerhalb landen in zwei Überlaufbins.
    """
    lo, hi = np.quantile(pooled, TV_QUANTILE_WINDOW)
    if not hi > lo:
        return np.array([lo - 0.5, lo + 0.5])
    window = pooled[(pooled >= lo) & (pooled <= hi)]
    edges = np.histogram_bin_edges(window, bins="fd", range=(lo, hi))
    if len(edges) - 1 > max_bins:
        edges = np.linspace(lo, hi, max_bins + 1)
    return edges


def _bin_index(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """0 = unterer Überlauf, len(edges) = oberer Überlauf"""
    return np.searchsorted(edges, values, side="right")


def histogram_tv(sample_a: Tuple[np.ndarray, np.ndarray], sample_b: Tuple[np.ndarray, np.ndarray],
                 max_bins: int) -> Tuple[float, float, Tuple[int, int], int]:
    """
    Plug-in-Schätzer 1/2 * sum |p - q| auf gemeinsamem 2-D Histogramm.

    Returns:
        (TV, SE-Proxy, Binanzahl je Achse, maximale Bin-Belegung)
    """
    edges = [shared_edges(np.concatenate((sample_a[axis], sample_b[axis])), max_bins)
             for axis in (0, 1)]
    n_y, n_x = len(edges[0]) + 1, len(edges[1]) + 1

    def counts(sample):
        flat = _bin_index(sample[0], edges[0]) * n_x + _bin_index(sample[1], edges[1])
        return np.bincount(flat, minlength=n_y * n_x)

    count_a, count_b = counts(sample_a), counts(sample_b)
    p = count_a / count_a.sum()
    q = count_b / count_b.sum()
    tv = 0.5 * float(np.abs(p - q).sum())
    se = 0.5 * math.sqrt(float((p * (1 - p)).sum() / count_a.sum()
                               + (q * (1 - q)).sum() / count_b.sum()))
    return tv, se, (n_y, n_x), int(max(count_a.max(), count_b.max()))


def tv_decay(init_a: Tuple[float, float], init_b: Tuple[float, float], ts: Sequence[float],
             params: ModelParams, sim: SimulationConfig, max_bins: int = 32,
             common_random_numbers: bool = True) -> TvDecayReport:
    """
    Empirischer Abfall der Totalvariation zwischen zwei Startpunkten.

    Mit common_random_numbers nutzen beide Ensembles denselben Seed; bei gleichen
    Startpunkten ist die Schätzung dann exakt 0. Sonst erhält Ensemble B den Seed
    seed + 1.

    Args:
        init_a: Startpunkt (y, x) von Ensemble A
        init_b: Startpunkt (y, x) von Ensemble B
        ts: Aufsteigende Zeitpunkte > 0
        params: Modellparameter mit theta > 0
        sim: Simulationseinstellungen (dt, n_paths, seed, ...)
        max_bins: Maximale Binanzahl je Achse im Fenster

    Returns:
        TvDecayReport
    """
    params.require_ergodicity()
    ts = [float(t) for t in ts]
    if not ts or ts[0] <= 0 or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ParameterError("ts must be positive and strictly increasing")

    horizon = ts[-1]
    dt = min(sim.dt, ts[0])
    seed_b = sim.seed if common_random_numbers else (sim.seed + 1) % 2 ** 64

    def ensemble(start: Tuple[float, float], seed: int):
        return simulate_pair(start[0], start[1], horizon, dt, sim.n_paths, seed, params,
                             record_times=ts, block_size=sim.block_size, workers=sim.workers)

    first, second = ensemble(init_a, sim.seed), ensemble(init_b, seed_b)

    estimates: List[float] = []
    errors: List[float] = []
    bins: List[Tuple[int, int]] = []
    sparse: List[float] = []
    for t in ts:
        slot = int(np.searchsorted(first.steps, int(round(t / first.dt))))
        tv, se, shape, max_count = histogram_tv(
            (first.y_paths[:, slot], first.x_paths[:, slot]),
            (second.y_paths[:, slot], second.x_paths[:, slot]), max_bins)
        if max_count < SPARSE_BIN_COUNT:
            logger.warning(f"Histogramm bei t={t} zu dünn belegt (max. {max_count} pro Bin)")
            sparse.append(t)
        estimates.append(tv)
        errors.append(se)
        bins.append(shape)

    positive = [(t, tv) for t, tv in zip(ts, estimates) if tv > 0]
    if len(positive) >= 2:
        fit_t = np.array([p[0] for p in positive])
        log_tv = np.log([p[1] for p in positive])
        rate, intercept = (float(v) for v in np.polyfit(fit_t, log_tv, 1))
        spearman = float(stats.spearmanr(fit_t, log_tv)[0]) if len(positive) > 2 else float("nan")
    else:
        rate, intercept, spearman = float("nan"), float("nan"), float("nan")

    logger.info(f"TV-Abfall: Rate={rate:.4g}, Spearman={spearman:.3f}")
    return TvDecayReport(ts=ts, tv_estimates=estimates, se_proxy=errors, fit_rate=rate,
                         fit_intercept=intercept, spearman=spearman,
                         initial_pair=(tuple(init_a), tuple(init_b)), bin_counts=bins,
                         n_paths=sim.n_paths, sparse_times=sparse)


# ========== Exponenten entlang von Strahlen ==========

def ray_regime(angle: float) -> str:
    """'real_part' in der Nähe von +-pi/2 (und rechts davon), sonst 'modulus'"""
    if abs(angle) > math.pi:
        raise ParameterError("ray angle must lie in [-pi, pi]")
    if abs(angle) <= math.pi / 2.0 + REAL_PART_WINDOW:
        return "real_part"
    return "modulus"


def ray_exponent_check(t: float, params: ModelParams, ray_angle: float,
                       rho_grid: Sequence[float], quad: QuadratureConfig) -> BoundsReport:
    """
    Regressiert log von Re bzw. |int_0^t v_s(rho*e^{i*angle}) ds| gegen log rho.

    Die führende Ordnung ist alpha/(2-alpha) * z^(2-alpha), die Steigung also 2 - alpha.

    Args:
        t: Zeit > 0
        params: Modellparameter
        ray_angle: Winkel des Strahls in [-pi, pi]
        rho_grid: Geometrisches Gitter mit min >= 2
        quad: Quadratur-Einstellungen

    Returns:
        BoundsReport mit Steigung und Achsenabschnitt

    Raises:
        ParameterError: bei ungültigem Gitter oder nichtpositiven Regressionswerten
    """
    params.validate()
    if not (math.isfinite(t) and t > 0):
        raise ParameterError("t must be positive")
    rhos = np.asarray(rho_grid, dtype=float)
    if rhos.ndim != 1 or len(rhos) < 2 or np.any(np.diff(rhos) <= 0):
        raise ParameterError("rho grid needs at least two increasing points")
    if rhos[0] < 2.0:
        raise ParameterError("rho grid must start at rho >= 2")

    regime = ray_regime(ray_angle)
    z = rhos * np.exp(1j * ray_angle)
    integrals = riccati_v_integral_values(t, z, params, quad).values
    values = integrals.real if regime == "real_part" else np.abs(integrals)
    if np.any(values <= 0):
        raise ParameterError(f"regression degenerate: nonpositive values in regime {regime}")

    slope, intercept = (float(v) for v in np.polyfit(np.log(rhos), np.log(values), 1))
    logger.info(f"Exponent entlang Winkel {ray_angle:.4f}: Steigung {slope:.4f}")
    return BoundsReport(t=t, angle=ray_angle, regime=regime, rhos=rhos, values=values,
                        slope=slope, intercept=intercept, expected_slope=2.0 - params.alpha)


def drift_rows(results: Sequence[DriftCheckResult]) -> List[list]:
    """CSV-Zeilen y0,x0,t,lhs,rhs,pass"""
    return [[r.y0, r.x0, r.t, r.lhs, r.rhs, int(r.passed)] for r in results]


def tv_rows(report: TvDecayReport) -> List[list]:
    """CSV-Zeilen t,tv,se_proxy"""
    return [[t, tv, se] for t, tv, se in zip(report.ts, report.tv_estimates, report.se_proxy)]


def bounds_rows(report: BoundsReport) -> List[list]:
    """CSV-Zeilen rho,value,ratio"""
    return [[float(r), float(v), float(q)]
            for r, v, q in zip(report.rhos, report.values, report.ratios)]
