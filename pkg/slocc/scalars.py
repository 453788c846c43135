"""Scalar types for the exact and floating backends.

Exact amplitudes are Gaussian rationals: a pair of ``fractions.Fraction`` for
the real and imaginary parts, closed under the ring operations and division by
a nonzero value. Floating amplitudes are plain Python/numpy ``complex`` values
that must be finite.

Example:
    >>> half = ExactScalar(Fraction(1, 2))
    >>> (half * half - ExactScalar(0, 1)).abs2()
    Fraction(17, 256)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Union
import cmath
import math
import re

from slocc.utils.errors import NonFiniteAmplitude, ParseError


class Backend(Enum):
    """Arithmetic backend a value was computed with."""
    EXACT = 'exact'
    FLOAT = 'float'


RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$')

ExactLike = Union['ExactScalar', int, Fraction, str]


def parse_rational(text: str) -> Fraction:
    """Parse a ``"p/q"`` rational string.

    A bare integer ``"p"`` is accepted as ``p/1``.

    Raises:
        ParseError: If the string is not p/q with integer p and nonzero integer q
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}")
    match = RATIONAL_PATTERN.match(text)
    if match is None:
        if re.fullmatch(r'\s*[+-]?\d+\s*', text):
            return Fraction(int(text))
        raise ParseError(f"malformed rational {text!r}")
    numerator, denominator = int(match.group(1)), int(match.group(2))
    if denominator == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Format a Fraction as ``"p/q"`` (lowest terms, positive q)."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, eq=False)
class ExactScalar:
    """Gaussian rational ``re + i*im``.

    Both parts are stored as Fractions, which keeps them in lowest terms with a
    positive denominator.
    """
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', _to_fraction(self.re))
        object.__setattr__(self, 'im', _to_fraction(self.im))

    @classmethod
    def coerce(cls, value: Union[ExactLike, complex, float]) -> ExactScalar:
        """Convert ints, Fractions, rational strings and finite floats exactly."""
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, str):
            return cls(parse_rational(value))
        if isinstance(value, complex):
            return cls(_to_fraction(value.real), _to_fraction(value.imag))
        return cls(_to_fraction(value))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> ExactScalar:
        return ExactScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def log_abs(self) -> float:
        """Natural log of the modulus, safe for values far outside double range."""
        if self.is_zero:
            return -math.inf
        squared = self.abs2()
        return (math.log(squared.numerator) - math.log(squared.denominator)) / 2

    def phase(self) -> float:
        """Argument in (-pi, pi]; 0 for zero."""
        if self.is_zero:
            return 0.0
        return _exact_phase(self.re, self.im)

    def __add__(self, other):
        other = _maybe_exact(other)
        if other is NotImplemented:
            return other
        return ExactScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe_exact(other)
        if other is NotImplemented:
            return other
        return ExactScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _maybe_exact(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _maybe_exact(other)
        if other is NotImplemented:
            return other
        return ExactScalar(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe_exact(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by exact zero")
        denominator = other.abs2()
        numerator = self * other.conjugate()
        return ExactScalar(numerator.re / denominator, numerator.im / denominator)

    def __rtruediv__(self, other):
        other = _maybe_exact(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.re, -self.im)

    def __pow__(self, exponent: int) -> ExactScalar:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ExactScalar(1) / (self ** -exponent)
        result, base = ExactScalar(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _maybe_exact(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = '+' if self.im >= 0 else '-'
        return f"{self.re}{sign}{abs(self.im)}i"


def float_scalar(value) -> complex:
    """Convert to a finite complex double.

    Raises:
        NonFiniteAmplitude: If the real or imaginary part is NaN or infinite
    """
    if isinstance(value, ExactScalar):
        value = value.to_complex()
    result = complex(value)
    if not (math.isfinite(result.real) and math.isfinite(result.imag)):
        raise NonFiniteAmplitude(f"non-finite amplitude {result!r}")
    return result


def float_phase(value: complex) -> float:
    """Argument of a complex double in (-pi, pi]."""
    return wrap_phase(cmath.phase(value))


def wrap_phase(angle: float) -> float:
    """Map an angle to (-pi, pi]."""
    wrapped = math.atan2(math.sin(angle), math.cos(angle))
    return math.pi if wrapped == -math.pi else wrapped


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NonFiniteAmplitude(f"non-finite amplitude {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _maybe_exact(value):
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar(value)
    return NotImplemented


def _exact_phase(re_part: Fraction, im_part: Fraction) -> float:
    # float() of a tiny Fraction underflows to 0; rescale by a power of two first
    scale = max(abs(re_part), abs(im_part))
    exponent = scale.numerator.bit_length() - scale.denominator.bit_length()
    factor = Fraction(2) ** -exponent
    return math.atan2(float(im_part * factor), float(re_part * factor))


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
