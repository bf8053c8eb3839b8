"""Rate functions on the simplex and for allelic partitions."""

import math
from typing import Sequence, Union

import numpy as np

from constants import MASS_SLACK
from errors import DomainError
from exact_dist.partition import AllelePartition


def _atoms(x) -> np.ndarray:
    atoms = np.asarray(getattr(x, "atoms", x), dtype=float)
    if np.any(atoms < 0):
        raise DomainError("atoms must be non-negative")
    return atoms


def rate_residual_mass(x: Union[Sequence[float], np.ndarray]) -> float:
    """
    Return log 1/(1 - sum(x)), or +inf once the mass reaches one.

    This is the common form of the rate for PD(theta) on the ordered
    simplex, for GEM on the stick space and for a finite GEM prefix.

    Args:
        x: A finite prefix of masses, or a MassVector.

    Raises:
        DomainError: If an atom is negative or the total exceeds one.
    """
    total = float(_atoms(x).sum())
    if total > 1.0 + MASS_SLACK:
        raise DomainError(f"total mass {total} exceeds one")
    if total >= 1.0:
        return math.inf
    return -math.log1p(-total)


def rate_relative_entropy(p: Union[Sequence[float], np.ndarray]) -> float:
    """
    Relative entropy of the uniform K-vector with respect to p.

    I^K(p) = sum_i (1/K) log((1/K) / p_i); +inf when some p_i = 0.
    """
    p = _atoms(p)
    if abs(p.sum() - 1.0) > 1e-10:
        raise DomainError(f"p must sum to one, got {p.sum()}")
    if np.any(p == 0):
        return math.inf
    return float(-math.log(p.size) - np.mean(np.log(p)))


def constrained_inf_relent(p: Union[Sequence[float], np.ndarray], K: int) -> float:
    """
    Infimum of I^K over K-vectors whose r largest entries are p.

    The infimum spreads the remaining mass 1 - a_r evenly over the K - r
    other coordinates, which requires p_r >= (1 - a_r)/(K - r).

    Args:
        p: r descending positive reals with sum a_r < 1.
        K: Number of alleles, K > r.

    Raises:
        DomainError: If p is not descending and positive or the completion is infeasible.
    """
    p = _atoms(p)
    r = p.size
    if r < 1 or K <= r:
        raise DomainError(f"need 1 <= r < K, got r={r}, K={K}")
    if np.any(p <= 0) or np.any(np.diff(p) > 0):
        raise DomainError("p must be positive and descending")
    a = float(p.sum())
    if a >= 1.0:
        raise DomainError(f"sum of p must be below one, got {a}")
    rest = K - r
    if p[-1] < (1.0 - a) / rest * (1.0 - 1e-12):
        raise DomainError(f"p_r={p[-1]} is below the even share {(1.0 - a) / rest}")
    return float((r / K) * -math.log(K) - np.sum(np.log(p)) / K
                 + (rest / K) * math.log(rest / K) - (rest / K) * math.log1p(-a))


def rate_esf(a: AllelePartition) -> int:
    """Return n minus the number of blocks of the partition."""
    return a.n - a.blocks
