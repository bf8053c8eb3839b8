"""Density of the r largest coordinates of a uniform point on the K-simplex.

g(p_1, ..., p_r) = K!/(K-r)! Gamma(K) L, where L is the volume of the
admissible values of the remaining K-r-1 free coordinates.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import gammaln, logsumexp

from constants import MASS_SLACK
from errors import DomainError
from simplex_geom.irwin_hall import SNAP_ERROR, irwin_hall_log_cdf_difference

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderStatPoint:
    """
    A value of (P_1, ..., P_r) for the uniform distribution on the K-simplex.

    Attributes:
        p: r descending positive reals with sum at most one.
        K: Dimension; K >= r + 2 so at least one coordinate stays free.
    """

    p: Tuple[float, ...]
    K: int

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        object.__setattr__(self, "p", p)
        if not p:
            raise DomainError("need at least one order statistic")
        if self.K < len(p) + 2:
            raise DomainError(f"K must be at least r + 2 = {len(p) + 2}, got {self.K}")
        if any(x <= 0 for x in p) or any(b > a for a, b in zip(p, p[1:])):
            raise DomainError(f"order statistics must be positive and descending: {p}")
        if math.fsum(p) > 1.0 + MASS_SLACK:
            raise DomainError(f"order statistics sum to {math.fsum(p)} > 1")

    @property
    def r(self) -> int:
        return len(self.p)

    @property
    def free(self) -> int:
        """Number of free coordinates, K - r - 1."""
        return self.K - self.r - 1

    @property
    def residual(self) -> float:
        """1 - a_r, the mass left for the remaining coordinates."""
        return max(0.0, 1.0 - math.fsum(self.p))

    @property
    def smallest(self) -> float:
        return self.p[-1]


def volume_L(point: OrderStatPoint) -> float:
    """
    Log volume of the admissible free coordinates.

    When 1 - a_r <= p_r the cap p_r is inactive and the volume is a simplex,
    (1 - a_r)^{K-r-1}/Gamma(K-r). Otherwise it is p_r^{K-r-1} times an
    Irwin-Hall probability of landing in [(1-a_r-p_r)/p_r, (1-a_r)/p_r].

    Returns:
        The log volume; ``-inf`` when the slab is empty.
    """
    M = point.free
    s = point.residual
    q = point.smallest
    if s <= q:
        if s == 0.0:
            return float("-inf")
        return M * math.log(s) - float(gammaln(M + 1))
    log_bracket = irwin_hall_log_cdf_difference(M, s / q, (s - q) / q)
    if log_bracket == float("-inf"):
        return log_bracket
    return M * math.log(q) + log_bracket


def order_stat_log_density(point: OrderStatPoint) -> float:
    """Log density of (P_1, ..., P_r) at the point."""
    K, r = point.K, point.r
    return float(gammaln(K + 1) - gammaln(K - r + 1) + gammaln(K)) + volume_L(point)


@dataclass(frozen=True)
class SandwichReport:
    """
    Two-sided bound on the log volume in the capped branch.

    ``log_lower`` is ``-inf`` when the lower bound is non-positive, in which
    case it holds trivially.
    """

    skipped: bool
    m: int = 0
    log_C: float = float("nan")
    log_volume: float = float("nan")
    log_lower: float = float("nan")
    log_upper: float = float("nan")
    snap_error: float = SNAP_ERROR
    passed: Optional[bool] = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def sandwich_check(point: OrderStatPoint, rtol: float = 1e-9) -> SandwichReport:
    """
    Check lower <= L <= upper for the capped branch 1 - a_r > p_r.

    With M = K-r-1, s = 1-a_r, q = p_r and m = floor(s/q) + 1,
    upper = s^M/M! and
    lower = s^{M+m}/(C (M+m)!) - (s-q)^M/M!, where
    C = sum_{l<=m} binom(M+m, l) (s-q)^l q^{m-l}.

    Returns:
        A report; ``skipped`` is set outside the capped branch.
    """
    M = point.free
    s = point.residual
    q = point.smallest
    if not s > q:
        logger.info("sandwich check skipped: 1 - a_r <= p_r at %s", point)
        return SandwichReport(skipped=True)

    m = int(math.floor(s / q)) + 1
    ls = np.arange(m + 1)
    log_C = float(logsumexp(gammaln(M + m + 1) - gammaln(ls + 1) - gammaln(M + m - ls + 1)
                            + ls * math.log(s - q) + (m - ls) * math.log(q)))
    log_upper = M * math.log(s) - float(gammaln(M + 1))
    first = (M + m) * math.log(s) - log_C - float(gammaln(M + m + 1))
    second = M * math.log(s - q) - float(gammaln(M + 1))
    log_lower = first + math.log1p(-math.exp(second - first)) if first > second else float("-inf")

    log_volume = volume_L(point)
    slack = rtol * max(1.0, abs(log_upper))
    upper_ok = log_volume <= log_upper + slack
    lower_ok = log_lower == float("-inf") or log_lower <= log_volume + slack
    return SandwichReport(False, m, log_C, log_volume, log_lower, log_upper, SNAP_ERROR, upper_ok and lower_ok)
