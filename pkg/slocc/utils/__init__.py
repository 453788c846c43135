"""Utility modules for slocc.

This package contains:
- errors: Exception hierarchy and the error_handler decorator
- progress: Progress tracking with rich output on stderr
"""

from .errors import (
    CapacityExceeded,
    DimensionMismatch,
    DuplicateIndex,
    GenerationFailed,
    IndexOutOfRange,
    InvalidExcitation,
    InvalidFamily,
    InvalidQubitCount,
    NonFiniteAmplitude,
    NotInvertible,
    OracleTooLarge,
    ParseError,
    SloccError,
    UnsupportedFamily,
    ZeroState,
    error_handler,
)
from .progress import ProgressManager

__all__ = [
    'SloccError',
    'InvalidQubitCount',
    'DimensionMismatch',
    'ZeroState',
    'NonFiniteAmplitude',
    'InvalidExcitation',
    'InvalidFamily',
    'UnsupportedFamily',
    'CapacityExceeded',
    'IndexOutOfRange',
    'OracleTooLarge',
    'GenerationFailed',
    'NotInvertible',
    'ParseError',
    'DuplicateIndex',
    'error_handler',
    'ProgressManager',
]
