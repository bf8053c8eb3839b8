"""Cumulant limits and rate functions for the four scaling regimes.

Case A keeps n fixed, case B has theta/n -> infinity, case C has
theta/n -> c and case D has theta/n -> 0.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import bisect
from scipy.special import xlogy

from constants import RegimeCase
from errors import DomainError, UsageError

logger = logging.getLogger(__name__)

# bracket for log u in the case C root equation
_LOG_U_MIN = -700.0
_LOG_U_MAX = 40.0


def _require(value, name: str, case: RegimeCase):
    if value is None:
        raise UsageError(f"case {case} needs parameter '{name}'", key=name)
    return value


def _check_c(c: float) -> float:
    if not c > 0 or not math.isfinite(c):
        raise DomainError(f"c must be a positive finite real, got {c}")
    return float(c)


def _u_log_ratio(log_u: float) -> float:
    """u log(1 + 1/u) as a function of log u; increases from 0 to 1."""
    if log_u > _LOG_U_MAX:
        return 1.0 - 0.5 * math.exp(-log_u)
    if log_u > 0:
        return math.exp(log_u) * math.log1p(math.exp(-log_u))
    return math.exp(log_u) * (math.log1p(math.exp(log_u)) - log_u)


def _F(log_u: float) -> float:
    """F(u) = (1+u) log(1+u) - u log u, written as log(1+u) + u log(1 + 1/u)."""
    softplus = log_u + math.log1p(math.exp(-log_u)) if log_u > 0 else math.log1p(math.exp(log_u))
    return softplus + _u_log_ratio(log_u)


def cgf_limit(case: RegimeCase, t: float, n: Optional[int] = None, c: Optional[float] = None) -> float:
    """
    Limit of (1/alpha) log E[exp(beta t K_n)] in the given regime.

    Args:
        case: The scaling regime.
        t: The argument.
        n: Sample size, required for case A.
        c: Limit of theta/n, required for case C.

    Raises:
        UsageError: If the case parameter is missing.
    """
    case = RegimeCase(case)
    if case == RegimeCase.A:
        n = _require(n, "n", case)
        return n * t if t > -1 else (t + 1) - n
    if case == RegimeCase.B:
        return t if t > -1 else -1.0
    if case == RegimeCase.C:
        c = _check_c(_require(c, "c", case))
        log_c = math.log(c)
        return (_F(log_c + c * t) - _F(log_c)) / c
    return math.expm1(t)


def legendre_dual_point(x: float, c: float) -> float:
    """
    Return log u_x, the root of u log(1 + 1/u) = x for x in (0, 1).

    The maximising t of t x - Lambda_3(t) is (log u_x - log c)/c.
    """
    if not 0.0 < x < 1.0:
        raise DomainError(f"dual point needs x in (0, 1), got {x}")
    root = bisect(lambda log_u: _u_log_ratio(log_u) - x, _LOG_U_MIN, _LOG_U_MAX,
                  xtol=1e-12, rtol=4 * np.finfo(float).eps, maxiter=200)
    logger.debug("dual point for x=%g: log u=%.15g", x, root)
    return root


def legendre_caseC(x: float, c: float) -> float:
    """
    Legendre transform sup_t {t x - Lambda_3(t)} of the case C cumulant limit.

    Evaluated through the change of variable u = c e^{ct}:
    (1/c)[x log u_x - F(u_x) - x log c + F(c)], with the analytic limits at
    x = 0 and x = 1 and +inf outside [0, 1].

    Args:
        x: The normalised number of alleles K_n/n.
        c: Limit of theta/n.
    """
    c = _check_c(c)
    log_c = math.log(c)
    if x < 0.0 or x > 1.0:
        return math.inf
    if x == 0.0:
        return _F(log_c) / c
    if x == 1.0:
        return (_F(log_c) - log_c - 1.0) / c
    if _u_log_ratio(_LOG_U_MIN) >= x:
        return _F(log_c) / c
    log_u = legendre_dual_point(x, c)
    return max(0.0, (x * log_u - _F(log_u) - x * log_c + _F(log_c)) / c)


def rate_ageclass_c(x: float, c: float) -> float:
    """
    I_c(x) = (1/c)[(c+1) log(c+1) + (1-x) log(1-x) - (c+1-x) log(c+1-x)].

    +inf outside [0, 1].
    """
    c = _check_c(c)
    if x < 0.0 or x > 1.0:
        return math.inf
    return float(((c + 1) * math.log1p(c) + xlogy(1 - x, 1 - x) - xlogy(c + 1 - x, c + 1 - x)) / c)


def rate_kn_regime(case: RegimeCase, arg: float, n: Optional[int] = None,
                   c: Optional[float] = None) -> float:
    """
    Rate function of the number of alleles in the given regime.

    Args:
        case: The scaling regime.
        arg: The level k (case A) or the normalised level x (cases B-D).
        n: Sample size, required for case A.
        c: Limit of theta/n, required for case C.

    Returns:
        n - k, 1 - x, the Legendre transform, or x log x - x + 1; +inf off the domain.
    """
    case = RegimeCase(case)
    if case == RegimeCase.A:
        n = _require(n, "n", case)
        if arg != int(arg) or not 1 <= arg <= n:
            return math.inf
        return float(n - int(arg))
    if case == RegimeCase.B:
        return 1.0 - arg if 0.0 <= arg <= 1.0 else math.inf
    if case == RegimeCase.C:
        return legendre_caseC(arg, _require(c, "c", case))
    if arg < 0.0:
        return math.inf
    return float(xlogy(arg, arg) - arg + 1.0)


def rate_ageclass_regime(case: RegimeCase, args: Sequence[float], c: Optional[float] = None) -> float:
    """
    Rate function of the first r age-class sizes in the given regime.

    Args:
        case: The scaling regime.
        args: Sizes k_1, ..., k_r (case A) or fractions x_1, ..., x_r (cases B-D).
        c: Limit of theta/n, required for case C.

    Returns:
        sum(k) - r, sum(x), I_c(sum(x)) or log 1/(1 - sum(x)); +inf off the domain.
    """
    case = RegimeCase(case)
    args = [float(a) for a in args]
    if not args:
        raise DomainError("need at least one age class")
    if case == RegimeCase.A:
        if any(a != int(a) or a < 1 for a in args):
            return math.inf
        return float(sum(args) - len(args))
    if any(a < 0.0 or a > 1.0 for a in args):
        return math.inf
    total = math.fsum(args)
    if total > 1.0:
        return math.inf
    if case == RegimeCase.B:
        return total
    if case == RegimeCase.C:
        return rate_ageclass_c(total, _require(c, "c", case))
    return math.inf if total >= 1.0 else -math.log1p(-total)
