"""Events whose exact probabilities are compared with their rates."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from constants import DEFAULT_DELTA, LATTICE_BUDGET, LATTICE_EDGE_SLACK, BallScale, EventKind, RegimeCase, SpeedKind
from errors import ComplexityError, DomainError, UsageError
from exact_dist import (
    AllelePartition,
    ageclass1_log_pmf,
    ageclass1_log_pmf_array,
    ageclass_joint_log_pmf,
    ageclass_joint_log_pmf_array,
    esf_log_pmf,
    kn_log_pmf,
    kn_log_pmf_row,
    log_sum_exp,
)
from exact_dist.logspace import LogReal, as_log_prob
from ldp_lab.regime import ScalingRegime
from rates import rate_ageclass_regime, rate_esf, rate_kn_regime

logger = logging.getLogger(__name__)

_AGECLASS_KINDS = (
    EventKind.AgeclassPoint,
    EventKind.AgeclassBall,
    EventKind.AgeclassJointPoint,
    EventKind.AgeclassJointBall,
)
_BALL_KINDS = (EventKind.KnBall, EventKind.AgeclassBall, EventKind.AgeclassJointBall)


@dataclass(frozen=True)
class EventSpec:
    """
    A point or a closed max-norm ball in the state space of a sample statistic.

    Attributes:
        kind: Which statistic and which shape.
        partition: The allelic partition of a partition-point event.
        levels: k for kn-point and ageclass-point, (k_1, ..., k_r) for joint points.
        center: Ball centre x, or (x_1, ..., x_r) for joint balls.
        delta: Ball radius.
        scale: Normalisation of K_n in a kn-ball: n, or theta log(n/theta).
    """

    kind: EventKind
    partition: Optional[AllelePartition] = None
    levels: Tuple[int, ...] = ()
    center: Tuple[float, ...] = ()
    delta: float = DEFAULT_DELTA
    scale: BallScale = BallScale.Sample

    def __post_init__(self):
        object.__setattr__(self, "kind", EventKind(self.kind))
        object.__setattr__(self, "scale", BallScale(self.scale))
        object.__setattr__(self, "levels", tuple(int(k) for k in self.levels))
        object.__setattr__(self, "center", tuple(float(x) for x in self.center))
        kind = self.kind
        if kind == EventKind.PartitionPoint:
            if self.partition is None:
                raise UsageError("a partition event needs a partition", key="partition")
            return
        if kind in (EventKind.KnPoint, EventKind.AgeclassPoint) and len(self.levels) != 1:
            raise UsageError(f"{kind} needs exactly one level", key="k")
        if kind == EventKind.AgeclassJointPoint and not self.levels:
            raise UsageError(f"{kind} needs at least one level", key="ks")
        if kind in _BALL_KINDS:
            if kind != EventKind.AgeclassJointBall and len(self.center) != 1:
                raise UsageError(f"{kind} needs exactly one centre", key="x")
            if not self.center:
                raise UsageError(f"{kind} needs at least one centre", key="xs")
            if not self.delta > 0:
                raise UsageError(f"ball radius must be positive, got {self.delta}", key="delta")
        if self.scale == BallScale.ThetaLog and kind != EventKind.KnBall:
            raise UsageError("theta-log scaling only applies to kn-ball events", key="scale")

    @classmethod
    def partition_point(cls, a: AllelePartition) -> "EventSpec":
        return cls(EventKind.PartitionPoint, partition=a)

    @classmethod
    def kn_point(cls, k: int) -> "EventSpec":
        return cls(EventKind.KnPoint, levels=(k,))

    @classmethod
    def kn_ball(cls, x: float, delta: float = DEFAULT_DELTA, scale: BallScale = BallScale.Sample) -> "EventSpec":
        return cls(EventKind.KnBall, center=(x,), delta=delta, scale=scale)

    @classmethod
    def ageclass_point(cls, k: int) -> "EventSpec":
        return cls(EventKind.AgeclassPoint, levels=(k,))

    @classmethod
    def ageclass_ball(cls, x: float, delta: float = DEFAULT_DELTA) -> "EventSpec":
        return cls(EventKind.AgeclassBall, center=(x,), delta=delta)

    @classmethod
    def ageclass_joint_point(cls, ks: Sequence[int]) -> "EventSpec":
        return cls(EventKind.AgeclassJointPoint, levels=tuple(ks))

    @classmethod
    def ageclass_joint_ball(cls, xs: Sequence[float], delta: float = DEFAULT_DELTA) -> "EventSpec":
        return cls(EventKind.AgeclassJointBall, center=tuple(xs), delta=delta)

    @property
    def speed_kind(self) -> SpeedKind:
        """Age-class events decay at speed gamma, the others at speed alpha."""
        return SpeedKind.Gamma if self.kind in _AGECLASS_KINDS else SpeedKind.Alpha

    def target_rate(self, regime: ScalingRegime, n: int) -> float:
        """
        The rate the normalised log-probability should converge to.

        For a ball this is the rate at its centre; the infimum over the ball
        differs from it by at most the rate's modulus over radius delta.
        """
        case = regime.case
        kind = self.kind
        if kind in (EventKind.PartitionPoint, EventKind.KnPoint, EventKind.AgeclassPoint,
                    EventKind.AgeclassJointPoint) and case != RegimeCase.A:
            raise UsageError(f"point event {kind} has a rate only in case A, not {case}", key="case")
        if kind in _BALL_KINDS and case == RegimeCase.A:
            raise UsageError(f"ball event {kind} has no rate in case A", key="case")
        if kind == EventKind.PartitionPoint:
            return float(rate_esf(self.partition))
        if kind == EventKind.KnPoint:
            return rate_kn_regime(case, self.levels[0], n=n)
        if kind == EventKind.KnBall:
            return rate_kn_regime(case, self.center[0], n=n, c=regime.c)
        if kind in (EventKind.AgeclassPoint, EventKind.AgeclassJointPoint):
            return rate_ageclass_regime(case, self.levels)
        return rate_ageclass_regime(case, self.center, c=regime.c)


def _lattice_range(center: float, delta: float, scale: float, n: int) -> Tuple[int, int]:
    slack = LATTICE_EDGE_SLACK * max(1.0, scale)
    lo = max(1, math.ceil(scale * (center - delta) - slack))
    hi = min(n, math.floor(scale * (center + delta) + slack))
    return lo, hi


def _check_terms(terms: float, budget: float):
    if terms > budget:
        raise ComplexityError("lattice sum", terms, budget)


def _kn_ball(theta: float, n: int, event: EventSpec, budget: float) -> LogReal:
    if event.scale == BallScale.Sample:
        scale = float(n)
    else:
        if n <= theta:
            raise DomainError(f"theta-log scaling needs n > theta, got n={n}, theta={theta}")
        scale = theta * math.log(n / theta)
    lo, hi = _lattice_range(event.center[0], event.delta, scale, n)
    if hi < lo:
        return float("-inf")
    _check_terms(hi - lo + 1, budget)
    return as_log_prob(log_sum_exp(kn_log_pmf_row(theta, n)[lo - 1:hi]))


def _ageclass_ball(theta: float, n: int, event: EventSpec, budget: float) -> LogReal:
    lo, hi = _lattice_range(event.center[0], event.delta, float(n), n)
    if hi < lo:
        return float("-inf")
    _check_terms(hi - lo + 1, budget)
    return as_log_prob(log_sum_exp(ageclass1_log_pmf_array(theta, n, np.arange(lo, hi + 1))))


def _ageclass_joint_ball(theta: float, n: int, event: EventSpec, budget: float) -> LogReal:
    ranges = [_lattice_range(x, event.delta, float(n), n) for x in event.center]
    if any(hi < lo for lo, hi in ranges):
        return float("-inf")
    _check_terms(math.prod(hi - lo + 1 for lo, hi in ranges), budget)
    axes = [np.arange(lo, hi + 1) for lo, hi in ranges]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    return as_log_prob(log_sum_exp(ageclass_joint_log_pmf_array(theta, n, grid)))


def event_log_prob(theta: float, n: int, event: EventSpec, budget: float = LATTICE_BUDGET) -> LogReal:
    """
    Exact log-probability of an event for an n-sample under PD(theta).

    Point events defer to the matching exact_dist function; balls are finite
    lattice sums of exact point masses.

    Raises:
        ComplexityError: If a ball holds more lattice points than the budget.
        UsageError: If a partition event does not match the sample size.
    """
    kind = event.kind
    if kind == EventKind.PartitionPoint:
        if event.partition.n != n:
            raise UsageError(f"partition is of {event.partition.n}, sample size is {n}", key="n")
        return esf_log_pmf(theta, event.partition)
    if kind == EventKind.KnPoint:
        return kn_log_pmf(theta, n, event.levels[0])
    if kind == EventKind.AgeclassPoint:
        return ageclass1_log_pmf(theta, n, event.levels[0])
    if kind == EventKind.AgeclassJointPoint:
        return ageclass_joint_log_pmf(theta, n, event.levels)
    if kind == EventKind.KnBall:
        return _kn_ball(theta, n, event, budget)
    if kind == EventKind.AgeclassBall:
        return _ageclass_ball(theta, n, event, budget)
    return _ageclass_joint_ball(theta, n, event, budget)


def gem_log_density(theta: float, x: Sequence[float]) -> float:
    """
    Log density of the first n GEM(theta) atoms at x.

    n log theta + (theta - 1) log(1 - s_n) - sum_{k<n} log(1 - s_k), with s_k
    the partial sums of x.

    Raises:
        DomainError: If theta <= 0, an atom is negative, or s_n >= 1.
    """
    if not theta > 0 or not math.isfinite(theta):
        raise DomainError(f"theta must be a positive finite real, got {theta}")
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DomainError("need a non-empty vector of atoms")
    if np.any(x < 0):
        raise DomainError(f"atoms must be non-negative: {x}")
    partial = np.cumsum(x)
    if partial[-1] >= 1.0:
        raise DomainError(f"partial sum {partial[-1]} leaves no mass for the tail")
    return float(x.size * math.log(theta) + (theta - 1.0) * math.log1p(-partial[-1])
                 - np.sum(np.log1p(-partial[:-1])))
