"""Exception types shared across the package."""

from __future__ import annotations


class WeakUnitsError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(WeakUnitsError):
    """A table is malformed: dangling id, missing or spurious entry."""


class BoundaryError(WeakUnitsError):
    """A pasting expression is ill-typed (sources and targets do not match)."""


class BudgetExceeded(WeakUnitsError):
    """A model or an enumeration is larger than the configured budget."""


class DivisionError(WeakUnitsError):
    """A unique-solution step did not have exactly one solution."""

    def __init__(self, message: str, witnesses: tuple[int, ...] = ()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class NoPreimage(DivisionError):
    pass


class MultiplePreimages(DivisionError):
    pass


class NoCandidate(WeakUnitsError):
    """A search for structure (for instance a left constraint) came back empty."""


class CertificationError(WeakUnitsError):
    """A constructed cell failed one of the equations it must satisfy."""

    def __init__(self, message: str, equation: str | None = None):
        super().__init__(message)
        self.equation = equation
