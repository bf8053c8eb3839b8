"""Laws of the number of alleles K_n and of the age-class sizes."""

import math
from typing import Sequence

import numpy as np
from scipy.special import digamma

from constants import STIRLING_CAP
from errors import DomainError
from exact_dist.logspace import LogReal, as_log_prob, log_rising_factorial
from exact_dist.stirling import stirling1_log_row

# direct summation of the mean is exact enough and cheap below this
_MEAN_DIRECT_LIMIT = 10**6


def _check(theta: float, n: int):
    if not theta > 0 or not math.isfinite(theta):
        raise DomainError(f"theta must be a positive finite real, got {theta}")
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")


def kn_log_pmf_row(theta: float, n: int, cap: int = STIRLING_CAP) -> np.ndarray:
    """
    Log-probabilities of K_n = 1, ..., n for an n-sample under PD(theta).

    Returns:
        Array whose entry k-1 is log P(K_n = k).
    """
    _check(theta, n)
    ks = np.arange(1, n + 1)
    return stirling1_log_row(n, cap) + ks * math.log(theta) - log_rising_factorial(theta, n)


def kn_log_pmf(theta: float, n: int, k: int, cap: int = STIRLING_CAP) -> LogReal:
    """
    log P(K_n = k) = log|S_n^k| + k log theta - log theta_(n).

    Returns ``-inf`` for k outside [1, n].
    """
    _check(theta, n)
    if k < 1 or k > n:
        return float("-inf")
    value = stirling1_log_row(n, cap)[k - 1] + k * math.log(theta) - log_rising_factorial(theta, n)
    return as_log_prob(value)


def kn_log_mgf(theta: float, n: int, t: float) -> float:
    """
    Log moment generating function of K_n.

    log E[e^{t K_n}] = log (theta e^t)_(n) - log theta_(n).

    Raises:
        DomainError: If theta e^t overflows or underflows.
    """
    _check(theta, n)
    shifted = math.exp(math.log(theta) + t) if math.log(theta) + t < 709.0 else math.inf
    if not math.isfinite(shifted) or shifted <= 0.0:
        raise DomainError(f"theta*e^t out of range for theta={theta}, t={t}")
    return log_rising_factorial(shifted, n) - log_rising_factorial(theta, n)


def kn_mean(theta: float, n: int) -> float:
    """Return E[K_n] = sum_{i<n} theta/(theta+i)."""
    _check(theta, n)
    if n <= _MEAN_DIRECT_LIMIT:
        return float(np.sum(theta / (theta + np.arange(n, dtype=float))))
    return float(theta * (digamma(theta + n) - digamma(theta)))


def ageclass1_log_pmf(theta: float, n: int, k: int) -> LogReal:
    """
    log P(X_{1,n} = k), the size of the oldest allele in an n-sample.

    Factorials of real arguments are Gamma ratios; k = n is taken verbatim.
    """
    _check(theta, n)
    if k < 1 or k > n:
        return float("-inf")
    value = (math.log(theta) - math.log(n) + log_rising_factorial(n - k + 1, k)
             - log_rising_factorial(theta + n - k, k))
    return as_log_prob(value)


def ageclass_joint_log_pmf(theta: float, n: int, ks: Sequence[int]) -> LogReal:
    """
    Joint log-probability of the first r age-class sizes (k_1, ..., k_r).

    Returns ``-inf`` if some k_i < 1 or the sizes exceed the sample.
    """
    _check(theta, n)
    ks = [int(k) for k in ks]
    if not ks:
        raise DomainError("need at least one age class")
    total = sum(ks)
    if min(ks) < 1 or total > n:
        return float("-inf")
    r = len(ks)
    value = r * (math.log(theta) - math.log(n))
    running = 0
    for k in ks[:-1]:
        running += k
        value -= math.log1p(-running / n)
    value += log_rising_factorial(n - total + 1, total)
    value -= log_rising_factorial(theta + n - total, total)
    return as_log_prob(value)


def ageclass1_log_pmf_array(theta: float, n: int, ks: np.ndarray) -> np.ndarray:
    """Elementwise ageclass1_log_pmf over an integer array of sizes."""
    _check(theta, n)
    ks = np.asarray(ks, dtype=np.int64)
    out = np.full(ks.shape, -np.inf)
    inside = (ks >= 1) & (ks <= n)
    k = ks[inside]
    out[inside] = (math.log(theta) - math.log(n) + log_rising_factorial(n - k + 1, k)
                   - log_rising_factorial(theta + n - k, k))
    return out


def ageclass_joint_log_pmf_array(theta: float, n: int, ks: np.ndarray) -> np.ndarray:
    """
    Elementwise ageclass_joint_log_pmf.

    Args:
        ks: Integer array of shape (..., r); the last axis holds (k_1, ..., k_r).
    """
    _check(theta, n)
    ks = np.asarray(ks, dtype=np.int64)
    r = ks.shape[-1]
    running = np.cumsum(ks, axis=-1)
    total = running[..., -1]
    out = np.full(total.shape, -np.inf)
    inside = (ks.min(axis=-1) >= 1) & (total <= n)
    s = total[inside]
    value = r * (math.log(theta) - math.log(n)) - np.sum(np.log1p(-running[inside][:, :-1] / n), axis=-1)
    out[inside] = value + log_rising_factorial(n - s + 1, s) - log_rising_factorial(theta + n - s, s)
    return out
