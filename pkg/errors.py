"""Exception hierarchy for ewens-ldp.

All errors derive from ValueError so callers that already guard numeric
input with ``except ValueError`` keep working.
"""

from typing import Optional


class LabError(ValueError):
    """Base class for every error raised by the library."""


class DomainError(LabError):
    """An argument lies outside the mathematical domain of an operation."""


class SizeError(LabError):
    """A configured size cap was exceeded."""

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}={value} exceeds the configured cap {cap}")


class ComplexityError(LabError):
    """A term or work budget was exceeded."""

    def __init__(self, what: str, terms: float, budget: float):
        self.what = what
        self.terms = terms
        self.budget = budget
        super().__init__(f"{what} needs ~{terms:.3g} terms, budget is {budget:.3g}")


class UsageError(LabError):
    """Invalid caller input, optionally tied to a configuration key."""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)
