"""Finite representations of points of the infinite simplex."""

from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from constants import MASS_SLACK
from errors import DomainError


class MassOrder(StrEnum):
    Descending = "descending"
    Stick = "stick"


@dataclass(frozen=True)
class MassVector:
    """
    A finite prefix of allele frequencies.

    Attributes:
        atoms: Non-negative masses, in the order given by ``order``.
        order: ``descending`` for ranked frequencies, ``stick`` for
            stick-breaking (size-biased) order.
        tail_bound: Upper bound on the mass not represented by ``atoms``.
        certified: False when the descending order below some rank is not
            guaranteed to match the infinite sequence.
    """

    atoms: np.ndarray
    order: MassOrder = MassOrder.Stick
    tail_bound: float = 0.0
    certified: bool = field(default=True)

    def __post_init__(self):
        atoms = np.array(self.atoms, dtype=float)
        atoms.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "order", MassOrder(self.order))
        if np.any(atoms < 0) or self.tail_bound < 0:
            raise DomainError("masses must be non-negative")
        if atoms.sum() + self.tail_bound > 1.0 + MASS_SLACK:
            raise DomainError(f"total mass {atoms.sum() + self.tail_bound} exceeds one")
        if self.order == MassOrder.Descending and np.any(np.diff(atoms) > 0):
            raise DomainError("descending MassVector has increasing atoms")

    def __len__(self) -> int:
        return int(self.atoms.size)

    @property
    def total(self) -> float:
        return float(self.atoms.sum())

    def descending(self) -> "MassVector":
        """Return the same atoms ranked largest first."""
        return MassVector(np.sort(self.atoms)[::-1], MassOrder.Descending, self.tail_bound, self.certified)
