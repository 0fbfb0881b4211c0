"""
Error hierarchy for the multiway cut system
"""
from typing import Optional


class MulticutError(Exception):
    """Base class for all package errors"""


class ParameterError(MulticutError, ValueError):
    """Invalid argument or configuration value"""


class ParseError(ParameterError):
    """Malformed text input; carries the offending line number"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(MulticutError, ValueError):
    """Structural invariant violated (instance or solution)"""


class InfeasibleSolutionError(ValidationError):
    """Assignment does not keep every terminal on its own side"""


class DimensionError(MulticutError, ValueError):
    """Length or shape mismatch between related objects"""


class CapacityError(MulticutError):
    """Problem exceeds a configured simulation or enumeration cap"""
