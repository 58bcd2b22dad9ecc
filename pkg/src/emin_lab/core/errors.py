# src/emin_lab/core/errors.py
"""
Exception hierarchy for emin-lab.

Every library failure derives from EminLabError so the CLI can report it in one place.
Each class also derives from the builtin that matches its meaning, so callers that
only know about ValueError / RuntimeError keep working.
"""

from typing import Optional


class EminLabError(Exception):
    """Root of all emin-lab errors."""


class NotHermitian(EminLabError, ValueError):
    """Matrix fails the Hermiticity check (max-abs of M - M^dagger above tolerance)."""


class NotNormalized(EminLabError, ValueError):
    """State vector norm differs from 1 beyond tolerance."""


class DimensionMismatch(EminLabError, ValueError):
    """Operand shapes do not agree with each other or with declared subsystem dims."""


class DomainError(EminLabError, ValueError):
    """A spectral function was applied outside its domain."""


class SupportViolation(EminLabError, ValueError):
    """Relative entropy is infinite: support(a) is not contained in support(b)."""


class InvalidState(EminLabError, ValueError):
    """Density matrix is not a valid quantum state (trace or positivity)."""


class NoConvergence(EminLabError, RuntimeError):
    """The eigensolver or SVD failed to converge."""


class InteractingHamiltonian(EminLabError, NotImplementedError):
    """Operation is only defined for H = A (x) I + I (x) B."""


class InvalidParameter(EminLabError, ValueError):
    """A model parameter (coupling, truncation, seed) is out of range or not finite."""


class ParseError(EminLabError, ValueError):
    """Malformed matrix or record file, with a location for diagnostics."""

    def __init__(
        self,
        message: str,
        source: str = "<input>",
        line: Optional[int] = None,
        column: Optional[int] = None,
        offset: Optional[int] = None,
    ):
        self.source = source
        self.line = line
        self.column = column
        self.offset = offset
        location = source
        if line is not None:
            location += f":{line}"
            if column is not None:
                location += f":{column}"
        if offset is not None:
            location += f" (offset {offset})"
        super().__init__(f"{location}: {message}")


class ConsistencyError(EminLabError, ArithmeticError):
    """Two routes to the same quantity disagree beyond tolerance."""
