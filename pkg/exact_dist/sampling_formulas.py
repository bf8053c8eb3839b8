"""Sampling formulas for allelic partitions.

Covers the Ewens sampling formula, its finite-K symmetric Dirichlet
counterpart, and the conditional probability of a partition given the allele
frequencies.
"""

import logging
import math
from typing import Sequence, Union

import numpy as np
from scipy.special import gammaln

from constants import CONDITIONAL_BUDGET
from errors import ComplexityError, DomainError
from exact_dist.logspace import LogReal, as_log_prob, log_rising_factorial
from exact_dist.partition import AllelePartition

logger = logging.getLogger(__name__)


def _check_theta(theta: float):
    if not theta > 0 or not math.isfinite(theta):
        raise DomainError(f"theta must be a positive finite real, got {theta}")


def _nonzero(a: AllelePartition):
    return [(j, c) for j, c in enumerate(a.counts, start=1) if c > 0]


def esf_log_pmf(theta: float, a: AllelePartition) -> LogReal:
    """
    Log-probability of the allelic partition under the Ewens sampling formula.

    P(a) = n!/theta_(n) * prod_j (theta/j)^{a_j} / a_j!

    Args:
        theta: The mutation parameter.
        a: The allelic partition.

    Returns:
        log P(A_n = a).
    """
    _check_theta(theta)
    log_theta = math.log(theta)
    value = gammaln(a.n + 1) - log_rising_factorial(theta, a.n)
    for j, c in _nonzero(a):
        value += c * (log_theta - math.log(j)) - gammaln(c + 1)
    return as_log_prob(value)


def dirichletK_log_pmf(theta: float, K: int, a: AllelePartition) -> LogReal:
    """
    Log-probability of the allelic partition of a sample from a symmetric
    Dirichlet population with K alleles and parameter alpha = theta/K.

    Returns ``-inf`` when the partition has more than K blocks.
    """
    _check_theta(theta)
    if K < 2:
        raise DomainError(f"K must be at least 2, got {K}")
    k = a.blocks
    if k > K:
        return float("-inf")
    alpha = theta / K
    value = (gammaln(a.n + 1) - log_rising_factorial(theta, a.n)
             + k * math.log(alpha) + log_rising_factorial(K - k + 1, k))
    for j, c in _nonzero(a):
        block = log_rising_factorial(alpha + 1.0, j - 1) - gammaln(j + 1)
        value += c * block - gammaln(c + 1)
    return as_log_prob(value)


def log_partition_factor(a: AllelePartition) -> float:
    """Return log C(n, a) = log n! - sum_j [a_j log j! + log a_j!]."""
    value = gammaln(a.n + 1)
    for j, c in _nonzero(a):
        value -= c * gammaln(j + 1) + gammaln(c + 1)
    return float(value)


def conditional_sampling_log_prob(a: AllelePartition, p: Union[Sequence[float], np.ndarray],
                                  budget: float = CONDITIONAL_BUDGET) -> LogReal:
    """
    Log of the probability of drawing partition ``a`` from allele frequencies ``p``.

    The sum over distinct atom indices (increasing within each multiplicity)
    of prod p_l^j is accumulated by a dynamic program over the atoms, whose
    state counts how many atoms were already given to each multiplicity.
    When sum(p) < 1 the raw, non-normalised value is returned.

    Args:
        a: The allelic partition.
        p: Finite-support frequencies, a sequence or a MassVector.
        budget: Upper bound on atoms times DP states.

    Returns:
        log F_a(p), ``-inf`` when fewer positive atoms than blocks exist.

    Raises:
        DomainError: If p has negative entries.
        ComplexityError: If the work exceeds the budget.
    """
    atoms = np.asarray(getattr(p, "atoms", p), dtype=float)
    if np.any(atoms < 0):
        raise DomainError("frequencies must be non-negative")
    atoms = atoms[atoms > 0]
    if a.blocks > atoms.size:
        return float("-inf")

    present = _nonzero(a)
    shape = tuple(c + 1 for _, c in present)
    work = float(atoms.size) * float(np.prod(shape))
    if work > budget:
        raise ComplexityError("conditional sampling", work, budget)

    state = np.full(shape, -np.inf)
    state[(0,) * len(shape)] = 0.0
    for log_p in np.log(atoms):
        old = state
        state = old.copy()
        for axis, (j, _) in enumerate(present):
            head = [slice(None)] * len(shape)
            tail = [slice(None)] * len(shape)
            head[axis] = slice(1, None)
            tail[axis] = slice(None, -1)
            state[tuple(head)] = np.logaddexp(state[tuple(head)], old[tuple(tail)] + j * log_p)

    logger.debug("conditional sampling over %d atoms, %d states", atoms.size, state.size)
    value = state[tuple(c for _, c in present)] + log_partition_factor(a)
    return as_log_prob(value)


def sample_partition_log_prob(a: AllelePartition, p: Union[Sequence[float], np.ndarray],
                              budget: float = CONDITIONAL_BUDGET) -> LogReal:
    """
    Log-probability that an n-sample from frequencies ``p`` has partition ``a``.

    This is log F_a(p) + sum_j log a_j!. Summed over all partitions of n it
    gives sum(p)^n, so 1 for a probability vector.
    """
    value = conditional_sampling_log_prob(a, p, budget)
    if value == float("-inf"):
        return value
    return as_log_prob(value + sum(gammaln(c + 1) for _, c in _nonzero(a)))
