"""
CREVE - Exceptions

This module contains all exception classes used by the library.
"""

from typing import Optional

from creve.constants import ErrorCode


class CreveException(Exception):
    """
    Base exception class for all CREVE exceptions.
    """

    def __init__(self, message: Optional[str] = None, cause: Optional[Exception] = None):
        self._message = message
        self._cause = cause
        super().__init__(message)

    @property
    def message(self) -> Optional[str]:
        return self._message

    @property
    def cause(self) -> Optional[Exception]:
        return self._cause


class _CodeMessageException(CreveException):
    """
    Base class for exceptions with error_code and error_message attributes.
    """

    def __init__(
        self, error_code: Optional[str] = None, error_message: Optional[str] = None, cause: Optional[Exception] = None
    ):
        # Handle single string argument case (treated as error_message)
        if error_code is not None and error_message is None and cause is None:
            error_message = error_code
            error_code = None

        self._error_code = error_code
        self._error_message = error_message
        message = f"{error_code}: {error_message}" if error_code and error_message else error_message
        super().__init__(message, cause)

    @property
    def error_code(self) -> Optional[str]:
        return self._error_code

    @property
    def error_message(self) -> Optional[str]:
        return self._error_message


class ConfigException(_CodeMessageException):
    """
    Exception thrown when a configuration error occurs.
    """


class DatasetException(_CodeMessageException):
    """
    Exception thrown when a dataset or result file cannot be read or written.

    The offending file name and, for row-level problems, the 1-based line
    number are kept as attributes.
    """

    def __init__(
        self,
        error_code: Optional[str] = None,
        error_message: Optional[str] = None,
        file_name: Optional[str] = None,
        line: Optional[int] = None,
    ):
        super().__init__(error_code, error_message)
        self._file_name = file_name
        self._line = line

    @property
    def file_name(self) -> Optional[str]:
        return self._file_name

    @property
    def line(self) -> Optional[int]:
        return self._line


class EstimationException(_CodeMessageException):
    """
    Base class for numerical failures of the estimators, solver and metrics.
    """


class InsufficientDataException(EstimationException):
    """
    Exception thrown when an operation does not receive enough samples.
    """

    def __init__(self, error_message: str = "Not enough data.", error_code: ErrorCode = ErrorCode.INSUFFICIENT_DATA):
        super().__init__(error_code, error_message)


class DegenerateGeometryException(EstimationException):
    """
    Exception thrown when a least-squares geometry is rank deficient or ill-conditioned.
    """

    def __init__(self, error_message: str = "Degenerate geometry."):
        super().__init__(ErrorCode.DEGENERATE_GEOMETRY, error_message)


class ConvergenceException(EstimationException):
    """
    Exception thrown when the box-constrained solver exceeds its iteration cap.
    """

    def __init__(self, kkt_residual: float, error_message: Optional[str] = None):
        super().__init__(
            ErrorCode.CONVERGENCE_FAILED,
            error_message or f"Active-set iteration cap exceeded, KKT residual {kkt_residual:.3e}.",
        )
        self._kkt_residual = kkt_residual

    @property
    def kkt_residual(self) -> float:
        return self._kkt_residual


class InvalidInputException(EstimationException):
    """
    Exception thrown when an operation receives arguments outside its domain.
    """

    def __init__(self, error_message: str = "Invalid input."):
        super().__init__(ErrorCode.INVALID_INPUT, error_message)


class OutOfRangeException(EstimationException):
    """
    Exception thrown when a time lookup falls outside the covered interval.
    """

    def __init__(self, t: float, start: float, end: float):
        super().__init__(ErrorCode.OUT_OF_RANGE, f"Time {t!r} is outside the covered interval [{start!r}, {end!r}].")
        self._t = t
        self._start = start
        self._end = end

    @property
    def t(self) -> float:
        return self._t

    @property
    def start(self) -> float:
        return self._start

    @property
    def end(self) -> float:
        return self._end
