"""Unsigned Stirling numbers of the first kind in log domain."""

import logging
import threading
from typing import Dict, Optional

import numpy as np

from constants import STIRLING_CAP
from errors import DomainError, SizeError

logger = logging.getLogger(__name__)


class StirlingTable:
    """
    Cache of rows (log|S_n^1|, ..., log|S_n^n|).

    Rows are produced by the recurrence |S_{n+1}^k| = n|S_n^k| + |S_n^{k-1}|,
    starting from the largest cached row below the one requested. Readers
    never block each other; insertion happens under a lock.
    """

    def __init__(self, cap: int = STIRLING_CAP):
        self.cap = cap
        self._rows: Dict[int, np.ndarray] = {1: self._freeze(np.zeros(1))}
        self._lock = threading.Lock()

    @staticmethod
    def _freeze(row: np.ndarray) -> np.ndarray:
        row.setflags(write=False)
        return row

    def row(self, n: int, cap: Optional[int] = None) -> np.ndarray:
        """
        Return the log row for n.

        Raises:
            DomainError: If n < 1.
            SizeError: If n exceeds the cap.
        """
        if n < 1:
            raise DomainError(f"Stirling row needs n >= 1, got {n}")
        cap = self.cap if cap is None else cap
        if n > cap:
            raise SizeError("Stirling row", n, cap)
        cached = self._rows.get(n)
        if cached is not None:
            return cached

        with self._lock:
            cached = self._rows.get(n)
            if cached is not None:
                return cached
            start = max(m for m in self._rows if m < n)
            row = self._rows[start]
            logger.debug("extending Stirling row %d -> %d", start, n)
            for m in range(start, n):
                nxt = np.full(m + 1, -np.inf)
                nxt[:m] = np.log(m) + row
                nxt[1:] = np.logaddexp(nxt[1:], row)
                row = nxt
            self._rows[n] = self._freeze(row)
            return self._rows[n]


_default_table = StirlingTable()


def stirling1_log_row(n: int, cap: int = STIRLING_CAP) -> np.ndarray:
    """
    Log of the unsigned Stirling numbers of the first kind for a fixed n.

    Entry k-1 holds log|S_n^k|, the log coefficient of theta^k in the rising
    factorial theta_(n).

    Args:
        n: Positive integer, at most ``cap``.
        cap: Largest n accepted.

    Returns:
        A read-only array of length n.
    """
    return _default_table.row(n, cap)
