"""Error handling utilities.

This module provides the exception hierarchy shared by every layer of the
toolkit and the decorator used on the file boundary to turn unexpected
failures into a single error type the CLI knows how to report.
"""

from typing import TypeVar, Callable, Any, Optional, cast
from functools import wraps
import logging

logger = logging.getLogger(__name__)


class SloccError(Exception):
    """Base class for every error raised by the toolkit.

    The CLI maps any SloccError to exit code 1 and prints its message.

    Example:
        >>> try:
        ...     gen_ghz(3)
        ... except SloccError as e:
        ...     print(f"Generation failed: {e}")
    """
    pass


class InvalidQubitCount(SloccError):
    """Qubit count is odd, below 2, or otherwise unusable."""


class DimensionMismatch(SloccError):
    """Lengths or qubit counts of two inputs disagree."""


class ZeroState(SloccError):
    """Every amplitude of a state is zero."""


class NonFiniteAmplitude(SloccError):
    """Floating amplitude that is NaN or infinite."""


class InvalidExcitation(SloccError):
    """Dicke excitation number outside 1..n-1."""


class InvalidFamily(SloccError):
    """Unknown state family (or chi index outside 1..7)."""


class UnsupportedFamily(SloccError):
    """Known family that has no definition at the requested qubit count."""


class CapacityExceeded(SloccError):
    """State or matrix larger than the configured desk-scale ceiling."""


class IndexOutOfRange(SloccError):
    """Row, column or qubit index outside its valid range."""


class OracleTooLarge(SloccError):
    """Cofactor expansion requested for a matrix that is too large."""


class GenerationFailed(SloccError):
    """Random sampling ran out of attempts."""


class NotInvertible(SloccError):
    """Local operator with a vanishing (or too small) determinant."""


class ParseError(SloccError):
    """Malformed state document.

    Attributes:
        path: Field path (``amplitudes.3.re``) or text position of the problem
    """

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class DuplicateIndex(ParseError):
    """Sparse amplitude list names the same basis index twice."""


F = TypeVar('F', bound=Callable[..., Any])


def error_handler(func: F) -> F:
    """Decorator for consistent error handling.

    Toolkit errors pass through untouched; anything else is logged and
    converted into a SloccError so callers only ever catch one type.

    Args:
        func: The function to wrap with error handling

    Returns:
        Callable: Wrapped function with error handling

    Example:
        >>> @error_handler
        ... def read_state(path):
        ...     return parse_state(Path(path).read_bytes())
    """
    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except SloccError:
            raise
        except Exception as e:
            logger.error(f"Error in {func.__name__}: {str(e)}")
            raise SloccError(f"Operation failed: {str(e)}") from e
    return cast(F, wrapper)
