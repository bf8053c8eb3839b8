"""Random allelic partitions and allele counts.

Individuals arrive one at a time: the i-th one (i = 0, 1, ...) carries a new
allele with probability theta/(theta+i) and otherwise copies the allele of a
uniformly chosen earlier individual.
"""

import math
from typing import List

import numpy as np

from errors import DomainError
from exact_dist.partition import AllelePartition
from samplers.seeding import SeedSpec

# uniforms drawn per block when summing Bernoulli indicators
_KN_BLOCK = 10**6


def _check(theta: float, n: int):
    if not theta > 0 or not math.isfinite(theta):
        raise DomainError(f"theta must be a positive finite real, got {theta}")
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")


def sample_ewens_counts(theta: float, n: int, size: int, seed: SeedSpec) -> np.ndarray:
    """
    Allelic counts of ``size`` independent Ewens(theta) n-samples.

    Returns:
        Integer array of shape (size, n); row r holds (a_1, ..., a_n).
    """
    _check(theta, n)
    rng = seed.generator()
    rows = np.arange(size)
    labels = np.zeros((size, n), dtype=np.int64)
    next_label = np.ones(size, dtype=np.int64)
    for i in range(1, n):
        fresh = rng.random(size) < theta / (theta + i)
        parent = (rng.random(size) * i).astype(np.int64)
        labels[:, i] = np.where(fresh, next_label, labels[rows, parent])
        next_label += fresh

    sizes = np.zeros((size, n), dtype=np.int64)
    np.add.at(sizes, (np.repeat(rows, n), labels.ravel()), 1)
    counts = np.zeros((size, n + 1), dtype=np.int64)
    np.add.at(counts, (np.repeat(rows, n), sizes.ravel()), 1)
    return counts[:, 1:]


def sample_ewens_batch(theta: float, n: int, size: int, seed: SeedSpec) -> List[AllelePartition]:
    """Draw ``size`` Ewens(theta) allelic partitions of an n-sample."""
    return [AllelePartition(n, tuple(row)) for row in sample_ewens_counts(theta, n, size, seed)]


def sample_ewens_partition(theta: float, n: int, seed: SeedSpec) -> AllelePartition:
    """Draw one Ewens(theta) allelic partition of an n-sample."""
    return sample_ewens_batch(theta, n, 1, seed)[0]


def sample_kn_batch(theta: float, n: int, size: int, seed: SeedSpec) -> np.ndarray:
    """
    Draw ``size`` copies of K_n as sums of independent Bernoulli(theta/(theta+i)).

    Row 0 of the batch equals ``sample_kn`` for the same seed.
    """
    _check(theta, n)
    rng = seed.generator()
    probs = theta / (theta + np.arange(n, dtype=float))
    out = np.empty(size, dtype=np.int64)
    step = max(1, _KN_BLOCK // n)
    for start in range(0, size, step):
        stop = min(size, start + step)
        out[start:stop] = np.count_nonzero(rng.random((stop - start, n)) < probs, axis=1)
    return out


def sample_kn(theta: float, n: int, seed: SeedSpec) -> int:
    """Draw the number of distinct alleles in an n-sample."""
    return int(sample_kn_batch(theta, n, 1, seed)[0])
