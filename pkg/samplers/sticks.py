"""Stick-breaking: GEM and Poisson-Dirichlet sampling.

Sticks are U_k ~ Beta(1, theta) drawn by inversion, U = 1 - V^(1/theta).
The remaining mass is tracked as a log so deep sticks do not underflow
before the stopping rule fires.
"""

import logging
import math

import numpy as np

from errors import DomainError
from samplers.mass import MassOrder, MassVector
from samplers.seeding import SeedSpec

logger = logging.getLogger(__name__)

_MIN_CHUNK = 64


def _check_theta(theta: float):
    if not theta > 0 or not math.isfinite(theta):
        raise DomainError(f"theta must be a positive finite real, got {theta}")


class StickBreaker:
    """
    Sequential GEM(theta) stick-breaking on one random stream.

    Successive calls to ``take`` continue the same sequence, so any chunking
    of the draws yields the same atoms.
    """

    def __init__(self, theta: float, rng: np.random.Generator):
        _check_theta(theta)
        self.theta = theta
        self.rng = rng
        self.log_remaining = 0.0

    def take(self, count: int) -> np.ndarray:
        """
        Break ``count`` more sticks and return their masses.

        The log of the unbroken mass after each stick is kept in
        ``log_trail`` until the next call.
        """
        # 1 - random() lies in (0, 1], so log is finite
        log_rest = np.log1p(-self.rng.random(count)) / self.theta
        cumulative = self.log_remaining + np.cumsum(log_rest)
        before = np.concatenate(([self.log_remaining], cumulative[:-1]))
        atoms = np.exp(before) * -np.expm1(log_rest)
        self.log_trail = cumulative
        if count:
            self.log_remaining = float(cumulative[-1])
        return atoms

    @property
    def remaining(self) -> float:
        return math.exp(self.log_remaining)


def sample_gem(theta: float, count: int, seed: SeedSpec) -> MassVector:
    """
    Draw the first ``count`` GEM(theta) atoms in stick order.

    Args:
        theta: The mutation parameter.
        count: Number of sticks.
        seed: The random stream.

    Returns:
        A stick-ordered MassVector whose tail_bound is the unbroken mass.
    """
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    breaker = StickBreaker(theta, seed.generator())
    atoms = breaker.take(count)
    return MassVector(atoms, MassOrder.Stick, breaker.remaining)


def sample_gem_batch(theta: float, count: int, size: int, seed: SeedSpec) -> np.ndarray:
    """
    Draw ``size`` independent GEM prefixes of length ``count``.

    Row 0 equals ``sample_gem(theta, count, seed).atoms``.

    Returns:
        Array of shape (size, count).
    """
    _check_theta(theta)
    rng = seed.generator()
    log_rest = np.log1p(-rng.random((size, count))) / theta
    cumulative = np.cumsum(log_rest, axis=1)
    before = np.hstack((np.zeros((size, 1)), cumulative[:, :-1]))
    return np.exp(before) * -np.expm1(log_rest)


def sample_gem_until(theta: float, eps: float, seed: SeedSpec) -> MassVector:
    """
    Break sticks until the unbroken mass drops below ``eps``.

    Returns:
        A stick-ordered MassVector; its atoms extend ``sample_gem`` for the
        same seed.
    """
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    breaker = StickBreaker(theta, seed.generator())
    log_eps = math.log(eps)
    # expected number of sticks is about theta * log(1/eps)
    chunk = max(_MIN_CHUNK, int(theta * -log_eps) + 1)
    pieces = []
    while breaker.log_remaining >= log_eps:
        atoms = breaker.take(chunk)
        crossed = np.flatnonzero(breaker.log_trail < log_eps)
        if crossed.size:
            stop = int(crossed[0])
            atoms = atoms[:stop + 1]
            breaker.log_remaining = float(breaker.log_trail[stop])
        pieces.append(atoms)
        chunk = max(_MIN_CHUNK, chunk // 4)
    logger.debug("GEM(%g) reached eps=%g after %d sticks", theta, eps, sum(p.size for p in pieces))
    return MassVector(np.concatenate(pieces), MassOrder.Stick, breaker.remaining)


def sample_pd(theta: float, top_m: int, eps: float, seed: SeedSpec) -> MassVector:
    """
    Draw the ``top_m`` largest atoms of a PD(theta) vector.

    Runs ``sample_gem_until`` and ranks its atoms. Every unseen atom is
    smaller than ``eps``, so the ranking is exact whenever the last reported
    atom exceeds ``eps``; otherwise the result is flagged as uncertified.

    Args:
        theta: The mutation parameter.
        top_m: Number of ranked atoms to report.
        eps: Stopping threshold for the unbroken mass.
        seed: The random stream.

    Returns:
        A descending MassVector.
    """
    if top_m < 1:
        raise DomainError(f"top_m must be positive, got {top_m}")
    sticks = sample_gem_until(theta, eps, seed)
    ranked = np.sort(sticks.atoms)[::-1][:top_m]
    certified = ranked.size == top_m and ranked[-1] > eps
    if not certified:
        logger.warning("PD(%g) ranks below %d are not certified at eps=%g", theta, ranked.size, eps)
    return MassVector(ranked, MassOrder.Descending, sticks.tail_bound, certified)
