"""
Error types and handlers for the toolkit.
"""
import sys
import logging
import traceback
from typing import Callable, Dict, Optional, Type
from functools import wraps

# CLI exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


class TropRegError(Exception):
    """
    Base class for errors raised by the toolkit.
    """
    error_code = EXIT_FAILURE

    def __init__(self, message: str, details: Optional[str] = None, error_code: Optional[int] = None):
        self.message = message
        self.details = details
        if error_code is not None:
            self.error_code = error_code
        super().__init__(message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} ({self.details})"
        return self.message


class DimensionError(TropRegError, ValueError):
    """Operand shapes do not conform."""
    pass


class SemiringMismatchError(TropRegError, ValueError):
    """Operands carry different semiring tags."""
    pass


class NaNProducedError(TropRegError, ArithmeticError):
    """An operation produced NaN, i.e. the two infinities were combined."""
    pass


class StarDivergesError(TropRegError, ArithmeticError):
    """The Kleene star does not exist because the maximum cycle mean is positive."""
    pass


class NegativeCycleError(TropRegError, ArithmeticError):
    """A min-plus closure met a negative cycle."""
    pass


class PatternError(TropRegError, ValueError):
    """A pattern is malformed or a row of A ⊗ x is −∞."""
    pass


class RankError(TropRegError, ValueError):
    """Factorization rank out of range."""
    error_code = EXIT_INPUT


class ValidationError(TropRegError, ValueError):
    """Invalid configuration or input value."""
    error_code = EXIT_INPUT

    def __init__(self, message: str, field: Optional[str] = None, details: Optional[str] = None):
        self.field = field
        super().__init__(message, details)


class ParseError(TropRegError, ValueError):
    """Malformed matrix, CSV or edge-list file."""
    error_code = EXIT_INPUT


class CapExceededError(TropRegError):
    """A configured size cap of an exhaustive solver or oracle was exceeded."""
    error_code = EXIT_CAP


class EnumerationCapExceeded(CapExceededError):
    """Too many candidate patterns below the current one."""
    pass


# Exit codes for errors outside the toolkit hierarchy
ERROR_EXIT_CODES: Dict[Type[Exception], int] = {
    FileNotFoundError: EXIT_INPUT,
    IsADirectoryError: EXIT_INPUT,
    PermissionError: EXIT_INPUT,
    UnicodeDecodeError: EXIT_INPUT,
    MemoryError: EXIT_FAILURE,
}


def exit_code_for(exc: BaseException) -> int:
    """
    Map an exception to the CLI exit code.

    Args:
        exc: The exception.

    Returns:
        2 for input problems, 3 for solver caps, 1 otherwise.
    """
    if isinstance(exc, TropRegError):
        return exc.error_code
    for error_type, code in ERROR_EXIT_CODES.items():
        if isinstance(exc, error_type):
            return code
    return EXIT_FAILURE


def log_exceptions(logger: Optional[logging.Logger] = None) -> Callable:
    """
    Decorator that logs exceptions without swallowing them.

    Args:
        logger: Logger to use. The root logger when None.

    Returns:
        The decorator.
    """
    if logger is None:
        logger = logging.getLogger()

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except TropRegError as e:
                logger.error(f"{func.__name__} failed: {e}")
                raise
            except Exception as e:
                logger.error(f"Exception in {func.__name__}: {str(e)}")
                logger.debug(traceback.format_exc())
                raise

        return wrapper

    return decorator


def global_exception_handler(exctype, value, tb):
    """
    Global handler for uncaught exceptions.

    Args:
        exctype: Exception type.
        value: Exception value.
        tb: Traceback.
    """
    if issubclass(exctype, KeyboardInterrupt):
        sys.__excepthook__(exctype, value, tb)
        return
    logging.critical("Unhandled exception:")
    logging.critical(''.join(traceback.format_exception(exctype, value, tb)))
    sys.__excepthook__(exctype, value, tb)


def install_global_exception_handler():
    """
    Route uncaught exceptions to the log.
    """
    sys.excepthook = global_exception_handler
    logging.debug("Global exception handler installed")
