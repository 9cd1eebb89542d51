"""Exception hierarchy shared by the arithmetic, lattice and enumeration layers."""

from typing import Any, Optional


class PerfectUnaryError(Exception):
    pass


class FieldInputError(PerfectUnaryError):
    """A field description could not be read or parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = "" if line is None else f" (line {line}, column {column})"
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


class ConfigurationError(PerfectUnaryError, ValueError):
    """Command-line or environment settings that cannot describe a run."""


class InvalidPolynomialError(PerfectUnaryError, ValueError):
    pass


class NotTotallyRealError(PerfectUnaryError, ValueError):
    pass


class ReduciblePolynomialError(PerfectUnaryError, ValueError):
    pass


class BasisNotUnimodularError(PerfectUnaryError, ValueError):
    pass


class ZeroElementError(PerfectUnaryError, ZeroDivisionError):
    pass


class NotTotallyPositiveError(PerfectUnaryError, ValueError):
    pass


class IndeterminateSignError(PerfectUnaryError):
    """An interval enclosure still contains zero at the requested precision."""


class EnclosureTooWideError(PerfectUnaryError):
    """An enclosure excludes zero but is too wide for the requested relative precision."""


class PrecisionExhaustedError(PerfectUnaryError):
    pass


class WrongUnitCountError(PerfectUnaryError, ValueError):
    pass


class NotAUnitError(PerfectUnaryError, ValueError):
    pass


class DependentUnitsError(PerfectUnaryError, ValueError):
    pass


class DegenerateDirectionError(PerfectUnaryError):
    pass


class UnboundedDirectionError(PerfectUnaryError):
    pass


class NotFullDimensionalError(PerfectUnaryError, ValueError):
    pass


class DomainTooSmallError(PerfectUnaryError, ValueError):
    pass


class LimitExceededError(PerfectUnaryError):
    """Raised by the class enumeration when a safety limit is hit; carries the partial report."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


# Raised for bad user input; everything else escaping a command is an internal failure.
INPUT_ERRORS = (
    FieldInputError,
    ConfigurationError,
    InvalidPolynomialError,
    NotTotallyRealError,
    ReduciblePolynomialError,
    BasisNotUnimodularError,
    WrongUnitCountError,
    NotAUnitError,
    DependentUnitsError,
)
