"""Exceptions raised by disjoint_weighing.

Everything derives from DWMError so the CLI can turn any of them into a usage error.
Errors about the shape or content of a value also derive from ValueError.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from disjoint_weighing.search import SearchStats


class DWMError(Exception):
    """Base class for every error raised by this package."""


class InvalidEntry(DWMError, ValueError):
    """A matrix entry is outside the allowed alphabet."""


class ShapeMismatch(DWMError, ValueError):
    """Orders of the operands do not conform."""


class NotAWeighingSeed(DWMError):
    """A seed quadruple does not satisfy the Gram condition."""


class SeedNotSkew(DWMError):
    """The first row of A is not skew."""


class ParamMismatch(DWMError, ValueError):
    """Parameters of two inputs do not fit together."""


class UncertifiedInput(DWMError):
    """An input is missing a certification the operation depends on."""


class MissingBaseData(DWMError):
    """A family needs base data that is not built in."""


class InvalidProblem(DWMError, ValueError):
    """A search problem has impossible parameters."""


class StaleCheckpoint(DWMError):
    """A checkpoint was written for a different search problem."""


class NotNormalized(DWMError, ValueError):
    """A Hadamard matrix does not have an all-ones first row."""


class UnexpectedSpectrum(DWMError):
    """An eigenvalue lies outside Q(sqrt(-m))."""


class RadicandMismatch(DWMError, ValueError):
    """Two quadratic scalars live in different fields."""


class UnknownFamily(DWMError, ValueError):
    """A construct spec names no known family."""


class ConfigError(DWMError, ValueError):
    """A configuration value could not be parsed."""


class GridParseError(DWMError, ValueError):
    """A sign-grid file is malformed."""

    def __init__(self, message: str, line: int, column: int = 0) -> None:
        self.line: int = line
        self.column: int = column
        super().__init__(f"line {line}, column {column}: {message}")


class SearchExhausted(DWMError):
    """The search space was fully explored without a solution."""

    def __init__(self, stats: SearchStats) -> None:
        self.stats: SearchStats = stats
        super().__init__(f"search space exhausted after {stats.nodes} nodes")


class BudgetExceeded(DWMError):
    """The node or wall-clock budget ran out before a solution was found."""

    def __init__(self, stats: SearchStats, checkpoint: bytes | None) -> None:
        self.stats: SearchStats = stats
        self.checkpoint: bytes | None = checkpoint
        super().__init__(f"budget exceeded after {stats.nodes} nodes")
