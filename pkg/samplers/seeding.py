"""Reproducible random streams."""

from dataclasses import dataclass

import numpy as np

from constants import DEFAULT_SEED
from errors import DomainError


@dataclass(frozen=True)
class SeedSpec:
    """
    Identifies one independent random stream.

    The stream is a PCG64 generator fed by ``SeedSequence(master_seed,
    spawn_key=(stream_index,))``; distinct stream indices give independent
    streams, and a spec always yields the same draws.

    Attributes:
        master_seed: A non-negative integer below 2**64.
        stream_index: A non-negative integer.
    """

    master_seed: int = DEFAULT_SEED
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise DomainError(f"master_seed must fit in 64 bits, got {self.master_seed}")
        if self.stream_index < 0:
            raise DomainError(f"stream_index must be non-negative, got {self.stream_index}")

    def generator(self) -> np.random.Generator:
        """Return a fresh generator positioned at the start of the stream."""
        sequence = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.PCG64(sequence))

    def child(self, offset: int) -> "SeedSpec":
        """Return the spec of a sibling stream."""
        return SeedSpec(self.master_seed, self.stream_index + offset)

    def as_dict(self) -> dict:
        return {"master_seed": self.master_seed, "stream_index": self.stream_index}
