"""Scaling regimes coupling the sample size n to the mutation rate theta."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from constants import Coupling, RegimeCase, SpeedKind
from errors import UsageError

logger = logging.getLogger(__name__)

# floor(theta^b) must not drop a unit when theta^b is an integer up to rounding
_FLOOR_GUARD = 1e-12
_LINEAR_RATIO_RTOL = 0.05


@dataclass(frozen=True)
class ScalingRegime:
    """
    One of the four scaling regimes together with a rule n(theta).

    Attributes:
        case: Regime label A-D.
        coupling: How n follows theta: held fixed, theta^parameter or theta/parameter.
        parameter: The fixed n, the exponent, or the ratio c.
        c: Limit of theta/n; needed by case C rates.
    """

    case: RegimeCase
    coupling: Coupling
    parameter: float
    c: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "case", RegimeCase(self.case))
        object.__setattr__(self, "coupling", Coupling(self.coupling))
        if not self.parameter > 0:
            raise UsageError(f"coupling parameter must be positive, got {self.parameter}", key="parameter")
        if self.coupling == Coupling.Fixed and self.parameter != int(self.parameter):
            raise UsageError(f"fixed sample size must be an integer, got {self.parameter}", key="n")
        if self.case == RegimeCase.C and self.c is None:
            raise UsageError("case C needs the limit c of theta/n", key="c")
        if self.c is not None and not self.c > 0:
            raise UsageError(f"c must be positive, got {self.c}", key="c")

    @classmethod
    def case_a(cls, n: int) -> "ScalingRegime":
        """n held fixed while theta grows."""
        return cls(RegimeCase.A, Coupling.Fixed, n)

    @classmethod
    def case_b(cls, b: float) -> "ScalingRegime":
        """n = theta^b with 0 < b < 1."""
        if not 0 < b < 1:
            raise UsageError(f"case B needs 0 < b < 1, got {b}", key="b")
        return cls(RegimeCase.B, Coupling.Power, b)

    @classmethod
    def case_c(cls, c: float) -> "ScalingRegime":
        """n = theta / c."""
        return cls(RegimeCase.C, Coupling.Linear, c, c=c)

    @classmethod
    def case_d(cls, d: float) -> "ScalingRegime":
        """n = theta^d with d > 1."""
        if not d > 1:
            raise UsageError(f"case D needs d > 1, got {d}", key="d")
        return cls(RegimeCase.D, Coupling.Power, d)

    @classmethod
    def pinned(cls, case: RegimeCase, n: int, c: Optional[float] = None) -> "ScalingRegime":
        """A regime label with n held fixed, for single evaluations and fixed-n sweeps."""
        return cls(case, Coupling.Fixed, n, c=c)

    def n_of_theta(self, theta: float) -> int:
        """Sample size used at mutation rate theta."""
        if not theta > 0:
            raise UsageError(f"theta must be positive, got {theta}", key="theta")
        if self.coupling == Coupling.Fixed:
            return int(self.parameter)
        if self.coupling == Coupling.Power:
            raw = math.exp(self.parameter * math.log(theta))
        else:
            raw = theta / self.parameter
        return max(1, math.floor(raw * (1.0 + _FLOOR_GUARD)))

    def check_coherence(self, thetas: Sequence[float]) -> bool:
        """
        Whether theta/n moves the way the regime label says along a grid.

        A mismatch is logged as a warning and does not stop the run.
        """
        if len(thetas) < 2:
            return True
        ratios = [t / self.n_of_theta(t) for t in thetas]
        if self.case == RegimeCase.A:
            ok = len({self.n_of_theta(t) for t in thetas}) == 1
        elif self.case == RegimeCase.B:
            ok = ratios[-1] > ratios[0] and ratios[0] > 1
        elif self.case == RegimeCase.C:
            ok = abs(ratios[-1] - self.c) <= _LINEAR_RATIO_RTOL * self.c
        else:
            ok = ratios[-1] < ratios[0] and ratios[0] < 1
        if not ok:
            logger.warning("grid %s..%s does not follow regime %s: theta/n goes %s -> %s",
                           thetas[0], thetas[-1], self.case, ratios[0], ratios[-1])
        return ok


def speed(regime: ScalingRegime, which: SpeedKind, theta: float) -> float:
    """
    The LDP speed alpha, beta or gamma of a regime at theta.

    Raises:
        UsageError: If the speed is not positive there, e.g. theta <= n in case B.
    """
    which = SpeedKind(which)
    n = regime.n_of_theta(theta)
    case = regime.case
    if case == RegimeCase.A:
        value = math.log(theta)
    elif case == RegimeCase.B:
        log_ratio = math.log(theta / n)
        value = log_ratio if which == SpeedKind.Beta else n * log_ratio
    elif case == RegimeCase.C:
        value = theta / n if which == SpeedKind.Beta else theta
    else:
        if which == SpeedKind.Alpha:
            value = theta * math.log(n / theta)
        elif which == SpeedKind.Beta:
            value = 1.0
        else:
            value = theta
    if not value > 0 or not math.isfinite(value):
        raise UsageError(f"{which} speed of case {case} is undefined at theta={theta}, n={n}")
    return float(value)
