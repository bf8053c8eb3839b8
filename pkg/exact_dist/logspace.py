"""Log-domain arithmetic shared by every exact distribution.

Probabilities are carried as plain floats holding ``log P``; ``-inf`` stands
for probability zero.
"""

from typing import Iterable, Union

import numpy as np
from scipy.special import gammaln, logsumexp

from constants import LOG_PROB_SLACK
from errors import DomainError

LogReal = float

# above this, the Stirling series difference beats lgamma cancellation
_STIRLING_SWITCH = 10.0


def _stirling_tail(z: np.ndarray) -> np.ndarray:
    inv = 1.0 / z
    inv2 = inv * inv
    return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))


def log_rising_factorial(theta, n):
    """
    Compute log of the rising factorial theta (theta+1) ... (theta+n-1).

    Works elementwise on numpy arrays. For theta >= 10 the difference
    log Gamma(theta+n) - log Gamma(theta) is taken from the Stirling series so
    that theta up to 1e300 keeps full relative precision.

    Args:
        theta: Positive real (or array of them).
        n: Non-negative integer (or array of them).

    Returns:
        A float, or an ndarray when any argument is an array.

    Raises:
        DomainError: If theta <= 0 or n < 0.
    """
    theta_arr = np.asarray(theta, dtype=float)
    n_arr = np.asarray(n, dtype=float)
    if np.any(~(theta_arr > 0)) or np.any(~np.isfinite(theta_arr)):
        raise DomainError(f"rising factorial needs a finite theta > 0, got {theta}")
    if np.any(n_arr < 0):
        raise DomainError(f"rising factorial needs n >= 0, got {n}")

    theta_b, n_b = np.broadcast_arrays(theta_arr, n_arr)
    small = gammaln(theta_b + n_b) - gammaln(theta_b)

    big_theta = np.maximum(theta_b, _STIRLING_SWITCH)
    z = big_theta + n_b
    large = (n_b * np.log(z) + (big_theta - 0.5) * np.log1p(n_b / big_theta) - n_b
             + _stirling_tail(z) - _stirling_tail(big_theta))

    out = np.where(theta_b >= _STIRLING_SWITCH, large, small)
    out = np.where(n_b == 0, 0.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def log_sum_exp(values: Union[np.ndarray, Iterable[float]]) -> LogReal:
    """Return log(sum(exp(values))); an empty or all ``-inf`` input gives ``-inf``."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if arr.size == 0 or not np.any(np.isfinite(arr)):
        return float("-inf")
    return float(logsumexp(arr))


def as_log_prob(value: float) -> LogReal:
    """
    Tag a value as a log-probability.

    Values in (0, LOG_PROB_SLACK] are rounding noise and are clamped to 0.

    Raises:
        DomainError: If the value is NaN or exceeds the slack.
    """
    value = float(value)
    if np.isnan(value) or value > LOG_PROB_SLACK:
        raise DomainError(f"{value} is not a log-probability")
    return min(value, 0.0)
