"""
Exception types raised by the cyclogon library.

Everything derives from CyclogonError so the CLI can map failures to exit
codes in one place. "No result" outcomes (an unsolvable congruence, a polygon
with no recurrence ratio, a polytope without a cyclic isometry) are returned
as None and never raised.
"""
from __future__ import annotations

__all__ = [
    "CyclogonError",
    "SpecError",
    "InputFormatError",
    "GeometryError",
    "ClassificationError",
    "PrecisionGapError",
]


class CyclogonError(Exception):
    """Base class for all library errors."""


class SpecError(CyclogonError, ValueError):
    """Invalid parameters: bad n, divisibility, w = 0, arity, parity."""


class InputFormatError(CyclogonError, ValueError):
    """Malformed polygon or polytope JSON."""


class GeometryError(CyclogonError, ValueError):
    """Degenerate geometry where a non-degenerate input is required."""


class ClassificationError(CyclogonError, RuntimeError):
    """A zero-set pattern outside the terminal cases A-E."""

    def __init__(self, message: str, zero_set: tuple[int, ...] = ()):
        super().__init__(message)
        self.zero_set = zero_set


class PrecisionGapError(CyclogonError, ArithmeticError):
    """An extended-precision difference fell between the equal and distinct bands."""
