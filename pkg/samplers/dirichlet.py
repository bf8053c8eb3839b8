"""Symmetric Dirichlet vectors and their size-biased permutation."""

import math

import numpy as np
from scipy.special import logsumexp

from errors import DomainError
from samplers.seeding import SeedSpec


def _log_gamma_variates(rng: np.random.Generator, shape: float, size) -> np.ndarray:
    """
    Logs of Gamma(shape) variates.

    For shape < 1 uses G_shape = G_{shape+1} * U^(1/shape), which keeps the
    log finite where a direct draw would underflow to zero.
    """
    if shape >= 1.0:
        return np.log(rng.gamma(shape, size=size))
    boosted = np.log(rng.gamma(shape + 1.0, size=size))
    return boosted + np.log1p(-rng.random(size)) / shape


def sample_beta(rng: np.random.Generator, a: float, b: float, size) -> np.ndarray:
    """Beta(a, b) variates as G_a / (G_a + G_b)."""
    log_a = _log_gamma_variates(rng, a, size)
    log_b = _log_gamma_variates(rng, b, size)
    return np.exp(log_a - np.logaddexp(log_a, log_b))


def sample_dirichlet_batch(K: int, alpha: float, size: int, seed: SeedSpec) -> np.ndarray:
    """
    Draw ``size`` symmetric Dirichlet(alpha, ..., alpha) vectors of length K.

    Returns:
        Array of shape (size, K); each row sums to one.
    """
    if K < 2:
        raise DomainError(f"K must be at least 2, got {K}")
    if not alpha > 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be a positive finite real, got {alpha}")
    logs = _log_gamma_variates(seed.generator(), alpha, (size, K))
    return np.exp(logs - logsumexp(logs, axis=1, keepdims=True))


def sample_dirichlet_symmetric(K: int, alpha: float, seed: SeedSpec) -> np.ndarray:
    """Draw one symmetric Dirichlet vector of length K."""
    return sample_dirichlet_batch(K, alpha, 1, seed)[0]


def sample_size_biased_dirichlet_batch(theta: float, K: int, size: int, seed: SeedSpec) -> np.ndarray:
    """
    Size-biased permutation of symmetric Dirichlet(theta/K) vectors.

    V_i ~ Beta(theta/K + 1, (K - i) theta/K) for i = 1, ..., K-1 and
    Y_i = (1 - V_1) ... (1 - V_{i-1}) V_i.

    Returns:
        Array of shape (size, K - 1).
    """
    if K < 2:
        raise DomainError(f"K must be at least 2, got {K}")
    if not theta > 0 or not math.isfinite(theta):
        raise DomainError(f"theta must be a positive finite real, got {theta}")
    rng = seed.generator()
    alpha = theta / K
    ys = np.empty((size, K - 1))
    left = np.ones(size)
    for i in range(1, K):
        v = sample_beta(rng, alpha + 1.0, (K - i) * alpha, size)
        ys[:, i - 1] = left * v
        left = left * (1.0 - v)
    return ys


def sample_size_biased_dirichlet(theta: float, K: int, seed: SeedSpec) -> np.ndarray:
    """Draw one size-biased symmetric Dirichlet vector, returned as its first K-1 entries."""
    return sample_size_biased_dirichlet_batch(theta, K, 1, seed)[0]
