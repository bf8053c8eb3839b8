"""
Empirical rate curves, cumulant-limit tables and law-of-large-numbers tables.

Every grid point is an exact log-domain evaluation; the only approximation
is the final extrapolation to theta = infinity.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.special import gammaln

from constants import DEFAULT_DELTA, LATTICE_BUDGET, MIN_GRID_POINTS, RegimeCase, SpeedKind
from errors import UsageError
from exact_dist import AllelePartition, dirichletK_log_pmf, kn_log_mgf, kn_mean
from ldp_lab.events import EventSpec, event_log_prob
from ldp_lab.regime import ScalingRegime, speed
from ldp_lab.tables import ConvergenceTable, ResultTable
from rates import cgf_limit, rate_esf

logger = logging.getLogger(__name__)

# accepted ratio of fit residual RMS to the RMS of the fitted C/speed term
RESIDUAL_RATIO_LIMIT = 0.1
_EXACT_FIT = 1e-12


def geometric_grid(start: float, factor: float, count: int) -> list:
    """Return [start, start*factor, ..., start*factor^(count-1)]."""
    if not start > 0 or not factor > 1 or count < 1:
        raise UsageError(f"bad geometric grid {start}:{factor}:{count}", key="grid")
    return [float(start * factor ** i) for i in range(count)]


def _check_grid(grid: Sequence[float]) -> list:
    grid = [float(g) for g in grid]
    if len(grid) < MIN_GRID_POINTS:
        raise UsageError(f"need at least {MIN_GRID_POINTS} grid points, got {len(grid)}", key="grid")
    if any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] <= 0:
        raise UsageError("grid must be positive and strictly increasing", key="grid")
    return grid


def _fit(speeds: np.ndarray, empirical: np.ndarray):
    """Least-squares fit empirical = r + C/speed; returns (r, C, residual ratio)."""
    inverse = 1.0 / speeds
    slope, intercept = np.polyfit(inverse, empirical, 1)
    term = slope * inverse
    residual = empirical - intercept - term
    rms_residual = float(np.sqrt(np.mean(residual ** 2)))
    rms_term = float(np.sqrt(np.mean(term ** 2)))
    if rms_residual <= _EXACT_FIT:
        ratio = 0.0
    elif rms_term == 0.0:
        ratio = math.inf
    else:
        ratio = rms_residual / rms_term
    return float(intercept), float(slope), ratio


def _convergence(thetas, sizes, speeds, log_probs, target, meta) -> ConvergenceTable:
    for theta, lp in zip(thetas, log_probs):
        if lp == -math.inf:
            raise UsageError(f"event has probability zero at theta={theta}", key="event")
    speeds_arr = np.asarray(speeds, dtype=float)
    empirical = -np.asarray(log_probs, dtype=float) / speeds_arr
    extrapolated, slope, ratio = _fit(speeds_arr, empirical)
    logger.debug("fit r=%s C=%s residual ratio=%s", extrapolated, slope, ratio)
    return ConvergenceTable(
        thetas=list(thetas),
        sizes=list(sizes),
        speeds=[float(s) for s in speeds],
        log_probs=[float(lp) for lp in log_probs],
        empirical=[float(e) for e in empirical],
        target=float(target),
        extrapolated=extrapolated,
        slope=slope,
        residual_ratio=ratio,
        residual_ok=ratio <= RESIDUAL_RATIO_LIMIT,
        meta=meta,
    )


def rate_curve(regime: ScalingRegime, event: EventSpec, theta_grid: Sequence[float],
               budget: float = LATTICE_BUDGET) -> ConvergenceTable:
    """
    Empirical rates -log P / speed of an event along a theta grid.

    The limit is extrapolated by least squares on r + C/speed.

    Args:
        regime: Scaling regime; its coupling gives n at each theta.
        event: The event whose probability decays.
        theta_grid: At least MIN_GRID_POINTS increasing values.
        budget: Lattice term budget for ball events.

    Returns:
        The convergence table; its target is the closed-form rate.

    Raises:
        UsageError: On a short or unsorted grid, or an impossible event.
    """
    thetas = _check_grid(theta_grid)
    regime.check_coherence(thetas)
    sizes, speeds, log_probs = [], [], []
    for theta in thetas:
        n = regime.n_of_theta(theta)
        sizes.append(n)
        speeds.append(speed(regime, event.speed_kind, theta))
        log_probs.append(event_log_prob(theta, n, event, budget))
    target = event.target_rate(regime, sizes[-1])
    meta = {
        "case": str(regime.case),
        "coupling": str(regime.coupling),
        "coupling_parameter": regime.parameter,
        "event": str(event.kind),
        "speed": str(event.speed_kind),
        "model": "empirical = r + C/speed",
    }
    return _convergence(thetas, sizes, speeds, log_probs, target, meta)


def dirichlet_rate_curve(a: AllelePartition, K_grid: Sequence[float], theta_exponent: float = 1.0,
                         theta_scale: float = 1.0) -> ConvergenceTable:
    """
    Empirical rates of a partition under the K-allele Dirichlet sampling formula.

    theta = theta_scale * K^theta_exponent and the speed is log K; the
    target is n minus the number of blocks, whatever the exponent.
    """
    Ks = [int(round(K)) for K in _check_grid(K_grid)]
    if theta_exponent < 1:
        raise UsageError(f"theta must grow at least like K, got exponent {theta_exponent}", key="e")
    if not theta_scale > 0:
        raise UsageError(f"theta scale must be positive, got {theta_scale}", key="s")
    thetas = [theta_scale * float(K) ** theta_exponent for K in Ks]
    log_probs = [dirichletK_log_pmf(theta, K, a) for theta, K in zip(thetas, Ks)]
    speeds = [math.log(K) for K in Ks]
    meta = {
        "partition": str(a),
        "K_grid": Ks,
        "theta_exponent": theta_exponent,
        "theta_scale": theta_scale,
        "model": "empirical = r + C/log K",
    }
    return _convergence(thetas, [a.n] * len(Ks), speeds, log_probs, rate_esf(a), meta)


def remainder_bound(regime: ScalingRegime, t: float, theta: float) -> float:
    """
    Leading finite-theta error of (1/alpha) log E[exp(beta t K_n)] against its limit.

    From Stirling's formula for the two rising factorials; in case C it is
    the O(log theta / theta) order of the remainder.
    """
    n = regime.n_of_theta(theta)
    case = regime.case
    if case == RegimeCase.A:
        log_theta = math.log(theta)
        return float(gammaln(n + 1)) / log_theta + n * n / (2.0 * theta * log_theta)
    if case == RegimeCase.B:
        log_ratio = math.log(theta / n)
        return (1.0 + math.log(2.0)) / log_ratio + abs(1.0 + t) / n
    if case == RegimeCase.C:
        return math.log(theta) / theta
    log_ratio = math.log(n / theta)
    return abs((1.0 - t) * math.exp(t) - 1.0) / log_ratio + 1.0 / theta


def mgf_limit_curve(regime: ScalingRegime, t_grid: Sequence[float], theta: float,
                    tolerance: float = 0.05, use_bound: Optional[bool] = None) -> ResultTable:
    """
    Compare (1/alpha) log E[exp(beta t K_n)] with the regime's cumulant limit.

    Args:
        regime: The regime; n = regime.n_of_theta(theta).
        t_grid: Arguments t.
        theta: Mutation rate.
        tolerance: Allowed difference on top of the remainder bound.
        use_bound: Whether the remainder bound widens the tolerance; by
            default every case but C.

    Returns:
        Rows (t, scaled, limit, difference, remainder_bound, passed); the
        meta block holds ``passed`` for the whole table.
    """
    n = regime.n_of_theta(theta)
    alpha = speed(regime, SpeedKind.Alpha, theta)
    beta = speed(regime, SpeedKind.Beta, theta)
    if use_bound is None:
        use_bound = regime.case != RegimeCase.C
    table = ResultTable(["t", "scaled", "limit", "difference", "remainder_bound", "passed"])
    all_passed = True
    for t in t_grid:
        scaled = kn_log_mgf(theta, n, beta * t) / alpha
        limit = cgf_limit(regime.case, t, n=n, c=regime.c)
        difference = scaled - limit
        bound = remainder_bound(regime, t, theta)
        allowed = tolerance + (bound if use_bound else 0.0)
        passed = abs(difference) <= allowed
        all_passed = all_passed and passed
        table.add_row(float(t), scaled, limit, difference, bound, passed)
    table.meta.update({"case": str(regime.case), "theta": theta, "n": n, "tolerance": tolerance,
                       "use_bound": use_bound, "passed": all_passed})
    return table


def _lln_normalisation(regime: ScalingRegime, theta: float, n: int):
    case = regime.case
    if case == RegimeCase.A:
        return 1.0, float(n)
    if case == RegimeCase.B:
        return float(n), 1.0
    if case == RegimeCase.C:
        c = regime.c
        return float(n), c * math.log1p(1.0 / c)
    if n <= theta:
        raise UsageError(f"case D normalisation needs n > theta, got n={n}, theta={theta}", key="n")
    return theta * math.log(n / theta), 1.0


def lln_table(regime: ScalingRegime, theta_grid: Sequence[float]) -> ResultTable:
    """
    Normalised mean number of alleles against its law-of-large-numbers limit.

    K_n itself in case A, K_n/n in cases B and C, K_n/(theta log(n/theta)) in case D.
    """
    table = ResultTable(["theta", "n", "normalised_mean", "target", "difference"])
    for theta in theta_grid:
        n = regime.n_of_theta(theta)
        scale, target = _lln_normalisation(regime, theta, n)
        value = kn_mean(theta, n) / scale
        table.add_row(float(theta), n, value, target, value - target)
    table.meta.update({"case": str(regime.case), "coupling": str(regime.coupling),
                       "coupling_parameter": regime.parameter})
    return table


def delta_sensitivity(regime: ScalingRegime, event: EventSpec, theta: float,
                      deltas: Sequence[float] = (0.005, DEFAULT_DELTA, 0.02),
                      budget: float = LATTICE_BUDGET) -> ResultTable:
    """Empirical rate of a ball event at one theta for several radii."""
    n = regime.n_of_theta(theta)
    rate_speed = speed(regime, event.speed_kind, theta)
    table = ResultTable(["delta", "log_prob", "empirical_rate", "target"])
    for delta in deltas:
        ball = EventSpec(event.kind, center=event.center, delta=delta, scale=event.scale)
        log_prob = event_log_prob(theta, n, ball, budget)
        table.add_row(float(delta), log_prob, -log_prob / rate_speed, ball.target_rate(regime, n))
    table.meta.update({"case": str(regime.case), "theta": theta, "n": n, "event": str(event.kind)})
    return table
