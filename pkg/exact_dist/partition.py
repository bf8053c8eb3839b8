"""Allelic partitions of a sample.

An allelic partition of an n-sample is the vector (a_1, ..., a_n) where a_j
counts the alleles seen exactly j times.
"""

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from constants import PARTITION_CAP
from errors import DomainError, SizeError, UsageError


@dataclass(frozen=True)
class AllelePartition:
    """
    An element of A_n.

    Attributes:
        n: The sample size.
        counts: (a_1, ..., a_n); a_j is the number of alleles of multiplicity j.
    """

    n: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if self.n < 1:
            raise DomainError(f"sample size must be positive, got {self.n}")
        if len(counts) != self.n:
            raise DomainError(f"expected {self.n} counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise DomainError(f"counts must be non-negative: {counts}")
        total = sum(j * c for j, c in enumerate(counts, start=1))
        if total != self.n:
            raise DomainError(f"sum of j*a_j is {total}, expected {self.n}")

    @property
    def blocks(self) -> int:
        """Number of distinct alleles k = sum of a_j."""
        return sum(self.counts)

    def block_sizes(self) -> List[int]:
        """Multiplicities of the alleles, largest first."""
        sizes = []
        for j in range(self.n, 0, -1):
            sizes.extend([j] * self.counts[j - 1])
        return sizes

    def key(self) -> Tuple[int, ...]:
        """The tuple (a_n, ..., a_1) used for ordering."""
        return tuple(reversed(self.counts))

    @classmethod
    def from_string(cls, text: str) -> "AllelePartition":
        """
        Parse the comma-separated form "a_1,...,a_n".

        Raises:
            UsageError: If a field is not an integer.
        """
        try:
            counts = [int(field) for field in text.replace(" ", "").split(",") if field != ""]
        except ValueError as e:
            raise UsageError(f"cannot parse partition '{text}'", key="partition") from e
        if not counts:
            raise UsageError("empty partition", key="partition")
        return cls(len(counts), tuple(counts))

    @classmethod
    def from_block_sizes(cls, sizes: Iterable[int]) -> "AllelePartition":
        """Build the partition whose alleles have the given multiplicities."""
        sizes = [int(s) for s in sizes]
        if not sizes or any(s < 1 for s in sizes):
            raise DomainError(f"block sizes must be positive: {sizes}")
        n = sum(sizes)
        counts = [0] * n
        for s in sizes:
            counts[s - 1] += 1
        return cls(n, tuple(counts))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.counts)


def _integer_partitions(n: int, largest: int):
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - part, part):
            yield [part] + rest


def enumerate_partitions(n: int, cap: int = PARTITION_CAP) -> List[AllelePartition]:
    """
    List every element of A_n exactly once.

    Partitions are ordered reverse-lexicographically in (a_n, ..., a_1), so the
    single block comes first and the all-singleton partition last.

    Args:
        n: The sample size.
        cap: Largest n accepted.

    Returns:
        The list of partitions.

    Raises:
        SizeError: If n exceeds the cap.
    """
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")
    if n > cap:
        raise SizeError("partition size", n, cap)
    partitions = [AllelePartition.from_block_sizes(sizes) for sizes in _integer_partitions(n, n)]
    partitions.sort(key=AllelePartition.key, reverse=True)
    return partitions
