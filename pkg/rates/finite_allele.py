"""Rates for the size-biased permutation of a symmetric Dirichlet vector."""

import math
from enum import StrEnum
from typing import Sequence, Union

import numpy as np

from constants import MASS_SLACK
from errors import DomainError


class SKForm(StrEnum):
    Sum = "sum"
    Sticks = "sticks"


def rate_beta_stick(v: float, K: int, i: int) -> float:
    """
    Rate of the i-th stick V_i ~ Beta(theta/K + 1, (K - i) theta/K) at speed theta.

    Vanishes at v = 1/(K + 1 - i) and is +inf at v in {0, 1}.

    Raises:
        DomainError: If v lies outside [0, 1] or i outside [1, K - 1].
    """
    if not 1 <= i <= K - 1:
        raise DomainError(f"stick index must lie in [1, {K - 1}], got {i}")
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"v must lie in [0, 1], got {v}")
    if v == 0.0 or v == 1.0:
        return math.inf
    share = K + 1 - i
    return (-math.log(v) / K - (K - i) / K * math.log1p(-v)
            - math.log(share) / K + (K - i) / K * math.log((K - i) / share))


def _sticks(y: np.ndarray) -> np.ndarray:
    left = 1.0 - np.concatenate(([0.0], np.cumsum(y)[:-1]))
    return y / left


def _check_y(y, K: int, full: bool) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if full and y.size != K - 1:
        raise DomainError(f"expected {K - 1} coordinates, got {y.size}")
    if not full and not 1 <= y.size <= K - 1:
        raise DomainError(f"prefix length must lie in [1, {K - 1}], got {y.size}")
    if np.any(y < 0):
        raise DomainError("coordinates must be non-negative")
    if y.sum() > 1.0 + MASS_SLACK:
        raise DomainError(f"coordinates sum to {y.sum()} > 1")
    return y


def rate_sizebiased_SK(y: Union[Sequence[float], np.ndarray], K: int,
                       form: SKForm = SKForm.Sum) -> float:
    """
    Rate of (Y_1, ..., Y_{K-1}) at speed theta.

    Args:
        y: K - 1 non-negative coordinates with sum at most one.
        K: Number of alleles.
        form: ``sum`` evaluates the explicit double sum over remaining
            masses; ``sticks`` sums rate_beta_stick over v_i = y_i/(1 - y_1 - ... - y_{i-1}).

    Returns:
        The rate, +inf when some y_i = 0 or the mass is exhausted.
    """
    y = _check_y(y, K, full=True)
    if np.any(y == 0) or y.sum() >= 1.0:
        return math.inf
    if SKForm(form) == SKForm.Sticks:
        return math.fsum(rate_beta_stick(float(v), K, i) for i, v in enumerate(_sticks(y), start=1))

    idx = np.arange(1, K)
    remaining = 1.0 - np.cumsum(y)
    before = np.concatenate(([1.0], remaining[:-1]))
    varying = np.log(before / y) / K + (K - idx) / K * np.log(before / remaining)
    fixed = -np.log(K + 1 - idx) / K + (K - idx) / K * np.log((K - idx) / (K + 1 - idx))
    return math.fsum(varying) + math.fsum(fixed)


def rate_sizebiased_prefix(x: Union[Sequence[float], np.ndarray], K: int) -> float:
    """
    Rate of the first r coordinates (Y_1, ..., Y_r) at speed theta.

    The tail sticks sit at their zero-rate values, so the rate is the sum of
    rate_beta_stick over the first r sticks.
    """
    x = _check_y(x, K, full=False)
    if x.sum() >= 1.0:
        return math.inf
    return math.fsum(rate_beta_stick(float(v), K, i) for i, v in enumerate(_sticks(x), start=1))
