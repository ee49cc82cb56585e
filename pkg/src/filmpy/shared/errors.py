"""Exception hierarchy for filmpy.

Library code raises these; only the CLI maps them to exit codes.
"""

from __future__ import annotations

from typing import Optional


class FilmError(Exception):
    """Base exception for filmpy errors."""


class InvalidArgument(FilmError, ValueError):
    """Raised for bad sizes, bounds, states or case names."""


class ConfigError(FilmError):
    """Raised when a run configuration cannot be parsed or validated."""


class DegenerateElement(FilmError):
    """Raised when a triangle has nonpositive signed area."""

    def __init__(self, triangle: int, area: float, frame: str = "physical"):
        self.triangle = int(triangle)
        self.area = float(area)
        self.frame = frame
        super().__init__(
            f"Degenerate element {self.triangle} in {frame} frame (area={self.area:.3e})"
        )


class AssemblyError(FilmError):
    """Raised when a weighted operator sees a nonpositive coefficient."""

    def __init__(self, element: int, value: float):
        self.element = int(element)
        self.value = float(value)
        super().__init__(
            f"Nonpositive coefficient {self.value:.3e} on element {self.element}"
        )


class NumericalBreakdown(FilmError):
    """Raised when an iterate becomes non-finite."""


class NonConvergence(FilmError):
    """Raised when an iteration exhausts its budget."""

    def __init__(self, message: str, iterations: int = 0, residual: float = float("nan")):
        self.iterations = int(iterations)
        self.residual = float(residual)
        super().__init__(f"{message} (iterations={self.iterations}, residual={self.residual:.3e})")


class InnerSolverError(NonConvergence):
    """Raised when an inner (block) solve of the preconditioner breaks down."""

    def __init__(self, block: str, reason: str):
        self.block = block
        super().__init__(f"Inner solve of block {block} failed: {reason}")


class ExportError(FilmError):
    """Raised when an output file cannot be written or read."""

    def __init__(self, path, reason: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {reason}")


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3
EXIT_IO = 4


def exit_code_for(exc: BaseException) -> Optional[int]:
    """Return the CLI exit code for an exception (None if not a known failure)."""
    if isinstance(exc, (ConfigError, InvalidArgument)):
        return EXIT_CONFIG
    if isinstance(exc, (NonConvergence, NumericalBreakdown)):
        return EXIT_NONCONVERGENCE
    if isinstance(exc, (ExportError, OSError)):
        return EXIT_IO
    if isinstance(exc, FilmError):
        return EXIT_FAILURE
    return None


__all__ = [
    "AssemblyError",
    "ConfigError",
    "DegenerateElement",
    "ExportError",
    "FilmError",
    "InnerSolverError",
    "InvalidArgument",
    "NonConvergence",
    "NumericalBreakdown",
    "exit_code_for",
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_CONFIG",
    "EXIT_NONCONVERGENCE",
    "EXIT_IO",
]
