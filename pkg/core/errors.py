"""
Engine Errors - Exception hierarchy shared by the algebra, systems and stage layers.

Every error carries a machine-readable ``code`` and the process ``exit_code``
the CLI should terminate with.
"""

from typing import Any, Dict, Optional


class EngineError(Exception):
    """Base class for all engine errors."""

    code = "engine_error"
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form, written to stderr by the CLI."""
        return {"code": self.code, "message": self.message, "details": self.details}


class ParseError(EngineError):
    """Malformed polynomial text or input file."""

    code = "parse_error"
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 details: Optional[Dict[str, Any]] = None):
        details = dict(details or {})
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}", details)
        self.line = line
        self.column = column


class DimensionMismatchError(EngineError, ValueError):
    """Operands live in rings or free modules of different sizes."""

    code = "dimension_mismatch"


class NotUnimodularError(EngineError, ValueError):
    """Integer matrix with det != ±1, or Laurent matrix with non-unit determinant."""

    code = "not_unimodular"


class PreconditionError(EngineError):
    """A stage was asked to run on input that does not satisfy its precondition."""

    code = "precondition_failed"
    exit_code = 3


class NotAutonomousError(PreconditionError):
    code = "not_autonomous"


class NotStronglyRelevantError(PreconditionError):
    """No integrality certificate found at the requested order (or the bound is too small)."""

    code = "not_strongly_relevant"


class NormalizationIncompleteError(PreconditionError):
    code = "normalization_incomplete"


class CompatibilityError(PreconditionError):
    """Initial condition violates X(σ)x = 0."""

    code = "incompatible_initial_condition"


class InsufficientSupportError(PreconditionError):
    """A window does not cover the lattice points an evaluation needs."""

    code = "insufficient_support"


class WindowExhaustedError(PreconditionError):
    """Applying an operator leaves no lattice point to evaluate."""

    code = "window_exhausted"


class VerificationError(EngineError):
    """Brute-force residual check found a nonzero value."""

    code = "verification_failed"
    exit_code = 4


class InvariantViolation(EngineError):
    """Internal consistency check failed; indicates a bug or an incomplete construction."""

    code = "invariant_violation"
