"""Exception hierarchy shared by the geometry, coloring and experiment code."""

from __future__ import annotations

from typing import Sequence, Tuple


class VoronoiError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(VoronoiError, ValueError):
    """A numeric or structural parameter is outside its allowed range."""


class DegenerateInputError(VoronoiError):
    """The point configuration cannot be triangulated (too few, collinear, duplicates)."""


class ContractError(VoronoiError):
    """A documented precondition of an operation does not hold."""


class InvariantError(VoronoiError):
    """An internal invariant failed; this indicates a bug rather than bad input."""


class OversizedComponentError(VoronoiError):
    """A monochromatic component is too large to be 4-colored within budget."""

    def __init__(self, component: Sequence[int], reason: str) -> None:
        self.component: Tuple[int, ...] = tuple(sorted(component))
        self.size = len(self.component)
        head = ", ".join(str(v) for v in self.component[:8])
        more = ", ..." if self.size > 8 else ""
        super().__init__(f"{reason}: component of {self.size} vertices [{head}{more}]")


__all__ = [
    "VoronoiError",
    "ParameterError",
    "DegenerateInputError",
    "ContractError",
    "InvariantError",
    "OversizedComponentError",
]
