"""Exact Irwin-Hall probabilities.

P(U_1 + ... + U_m <= s) = (1/m!) sum_{j <= floor(s)} (-1)^j C(m, j) (s - j)^m.

The alternating sum cancels catastrophically in floating point, so it is
evaluated over the rationals after snapping s to a multiple of 1/D.
"""

import math
from fractions import Fraction

from constants import IRWIN_HALL_CAP, SNAP_DENOMINATOR
from errors import DomainError, SizeError

# |P(s) - P(snapped s)| <= |s - snapped s| since the density is at most one
SNAP_ERROR = 0.5 / SNAP_DENOMINATOR


def _snap(s: float) -> int:
    return round(Fraction(s) * SNAP_DENOMINATOR)


def _alternating_sum(m: int, numerator: int) -> Fraction:
    """CDF at s = numerator/D for 0 <= s <= m/2."""
    d = SNAP_DENOMINATOR
    total = 0
    for j in range(numerator // d + 1):
        term = math.comb(m, j) * (numerator - j * d) ** m
        total += -term if j % 2 else term
    return Fraction(total, d ** m * math.factorial(m))


def _cdf_exact(m: int, numerator: int) -> Fraction:
    if numerator <= 0:
        return Fraction(0)
    if numerator >= m * SNAP_DENOMINATOR:
        return Fraction(1)
    # reflect so the sum runs over at most floor(m/2) terms
    if 2 * numerator > m * SNAP_DENOMINATOR:
        return 1 - _alternating_sum(m, m * SNAP_DENOMINATOR - numerator)
    return _alternating_sum(m, numerator)


def _check(m: int, cap: int):
    if m < 1:
        raise DomainError(f"Irwin-Hall needs m >= 1, got {m}")
    if m > cap:
        raise SizeError("Irwin-Hall order", m, cap)


def irwin_hall_cdf(m: int, s: float, cap: int = IRWIN_HALL_CAP) -> float:
    """
    P(sum of m independent uniform(0,1) variables <= s).

    Args:
        m: Number of summands.
        s: Threshold, snapped to the nearest multiple of 2**-64.
        cap: Largest m accepted.

    Raises:
        SizeError: If m exceeds the cap.
    """
    _check(m, cap)
    if s < 0:
        raise DomainError(f"threshold must be non-negative, got {s}")
    return float(_cdf_exact(m, _snap(s)))


def _log_fraction(value: Fraction) -> float:
    if value <= 0:
        return float("-inf")
    return math.log(value.numerator) - math.log(value.denominator)


def irwin_hall_log_cdf_difference(m: int, upper: float, lower: float, cap: int = IRWIN_HALL_CAP) -> float:
    """
    log[P(S_m <= upper) - P(S_m <= lower)], exact up to the final logarithm.

    Returns ``-inf`` when the difference vanishes.
    """
    _check(m, cap)
    difference = _cdf_exact(m, _snap(max(upper, 0.0))) - _cdf_exact(m, _snap(max(lower, 0.0)))
    return _log_fraction(difference)
