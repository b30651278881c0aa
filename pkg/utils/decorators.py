import functools
from enum import IntEnum
from typing import Any, Callable

from loguru import logger
from pydantic import ValidationError

from core.errors import DocumentParseError, HeffterError, InternalConsistencyError, StructuralError
from core.verifier import verify


class ExitCode(IntEnum):
    OK = 0
    IO_ERROR = 1
    NEGATIVE = 2  # does not exist, invalid array, or search exhausted without a solution
    UNKNOWN = 3  # unsolved class or inconclusive search
    OUT_OF_SCOPE = 4


def verified(func: Callable) -> Callable:
    """Decorator that re-verifies the HeffterArray returned by a construction."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        array = func(*args, **kwargs)
        report = verify(array)
        if not report.valid:
            logger.error(f"{func.__name__} produced an invalid H({array.n};{array.k})")
            raise InternalConsistencyError(
                f"{func.__name__} produced an array that fails verification", report=report
            )
        return array
    return wrapper


def error_handler(func: Callable) -> Callable:
    """Decorator for CLI commands: log failures and turn them into exit codes. Supports both methods and functions."""
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> int:
        try:
            return func(*args, **kwargs)
        except (DocumentParseError, StructuralError, ValidationError) as e:
            logger.error(f"Could not read array in {func.__name__}: {e}")
            return ExitCode.IO_ERROR
        except OSError as e:
            logger.error(f"I/O error in {func.__name__}: {e}")
            return ExitCode.IO_ERROR
        except HeffterError as e:
            logger.error(f"Error in {func.__name__}: {e}")
            return ExitCode.NEGATIVE
    return wrapper
