"""Pure states of an even number of qubits and the named state families.

A state is a dense vector of 2^n amplitudes, exact (Gaussian rationals) or
floating (complex doubles). States are never normalized implicitly: the
generators store integer vectors such as ``[1, 0, 0, 1]`` for GHZ and record
their squared norm, so every invariant can be reported both raw and
normalized without ever taking a square root.

Basis index convention: qubit 0 is the most significant bit of the index.

Example:
    >>> chi1 = gen_chi(1, 4)
    >>> chi1.support()
    (0, 5, 10, 15)
    >>> chi1.norm_squared
    Fraction(4, 1)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from slocc.constants import MAX_QUBITS, EXACT_NUMERATOR_RANGE, EXACT_DENOMINATOR_RANGE
from slocc.scalars import Backend, ExactScalar, ZERO
from slocc.utils.errors import (
    CapacityExceeded,
    DimensionMismatch,
    InvalidExcitation,
    InvalidFamily,
    InvalidQubitCount,
    NonFiniteAmplitude,
    UnsupportedFamily,
    ZeroState,
)

logger = logging.getLogger(__name__)

Amplitudes = Union[Tuple[ExactScalar, ...], np.ndarray]

FAMILIES = ('ghz', 'w', 'dicke') + tuple(f'chi{k}' for k in range(1, 8))


@dataclass(frozen=True, eq=False)
class PureState:
    """Even-n qubit pure state.

    Attributes:
        n (int): Number of qubits (even, 2 <= n <= MAX_QUBITS)
        amplitudes: Tuple of ExactScalar (exact) or read-only complex128 array (float)
        backend (Backend): Which of the two representations is held
        label (Optional[str]): Family name, e.g. ``chi3`` or ``dicke(2,6)``
        norm_squared: Sum of |a_i|^2 (Fraction or float); computed when not given
    """
    n: int
    amplitudes: Amplitudes
    backend: Backend = Backend.EXACT
    label: Optional[str] = None
    norm_squared: Union[Fraction, float, None] = field(default=None)

    def __post_init__(self):
        check_qubit_count(self.n)
        if self.backend is Backend.EXACT:
            amplitudes = tuple(ExactScalar.coerce(a) for a in self.amplitudes)
        else:
            amplitudes = np.array(self.amplitudes, dtype=np.complex128, copy=True).ravel()
            if not np.all(np.isfinite(amplitudes)):
                raise NonFiniteAmplitude("state has NaN or infinite amplitudes")
            amplitudes.setflags(write=False)
        if len(amplitudes) != 1 << self.n:
            raise DimensionMismatch(
                f"{self.n} qubits need {1 << self.n} amplitudes, got {len(amplitudes)}")
        object.__setattr__(self, 'amplitudes', amplitudes)

        computed = self._sum_abs2()
        if computed == 0:
            raise ZeroState("all amplitudes are zero")
        if self.norm_squared is None:
            object.__setattr__(self, 'norm_squared', computed)
        else:
            recorded = (Fraction(self.norm_squared) if self.backend is Backend.EXACT
                        else float(self.norm_squared))
            if recorded <= 0:
                raise ZeroState(f"recorded norm squared must be positive, got {recorded}")
            object.__setattr__(self, 'norm_squared', recorded)

    def _sum_abs2(self) -> Union[Fraction, float]:
        if self.backend is Backend.EXACT:
            return sum((a.abs2() for a in self.amplitudes), Fraction(0))
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def dim(self) -> int:
        """Length of the amplitude vector, 2^n."""
        return 1 << self.n

    def amplitude(self, index: int):
        return self.amplitudes[index]

    def support(self) -> Tuple[int, ...]:
        """Indices of the nonzero amplitudes, ascending."""
        if self.backend is Backend.EXACT:
            return tuple(i for i, a in enumerate(self.amplitudes) if not a.is_zero)
        return tuple(int(i) for i in np.flatnonzero(self.amplitudes))

    def nonzero_count(self) -> int:
        return len(self.support())

    def to_float(self) -> PureState:
        """Floating copy of the state (identity for float states)."""
        if self.backend is Backend.FLOAT:
            return self
        values = np.array([a.to_complex() for a in self.amplitudes], dtype=np.complex128)
        return PureState(self.n, values, Backend.FLOAT, self.label, float(self.norm_squared))

    def to_exact(self) -> PureState:
        """Exact copy; doubles convert to their exact binary rational value."""
        if self.backend is Backend.EXACT:
            return self
        values = tuple(ExactScalar.coerce(complex(a)) for a in self.amplitudes)
        return PureState(self.n, values, Backend.EXACT, self.label, Fraction(self.norm_squared))

    def scaled(self, factor) -> PureState:
        """Multiply every amplitude by a common factor; the norm scales by |factor|^2."""
        if self.backend is Backend.EXACT:
            factor = ExactScalar.coerce(factor)
            return PureState(self.n, tuple(a * factor for a in self.amplitudes),
                             Backend.EXACT, self.label, self.norm_squared * factor.abs2())
        factor = complex(factor)
        return PureState(self.n, self.amplitudes * factor, Backend.FLOAT, self.label,
                         self.norm_squared * abs(factor) ** 2)

    def normalized_amplitudes(self) -> np.ndarray:
        """Float amplitudes divided by sqrt(norm_squared), for display."""
        values = self.to_float().amplitudes
        return values / np.sqrt(float(self.norm_squared))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PureState):
            return NotImplemented
        if (self.n, self.backend, self.label) != (other.n, other.backend, other.label):
            return False
        if self.norm_squared != other.norm_squared:
            return False
        if self.backend is Backend.EXACT:
            return self.amplitudes == other.amplitudes
        return bool(np.array_equal(self.amplitudes, other.amplitudes))

    __hash__ = None

    def __repr__(self) -> str:
        label = f" {self.label}" if self.label else ''
        return (f"PureState(n={self.n}{label}, backend={self.backend.value}, "
                f"terms={self.nonzero_count()}, norm_squared={self.norm_squared})")


def check_qubit_count(n: int) -> None:
    """Validate an even qubit count within the dense storage cap.

    Raises:
        InvalidQubitCount: If n is not an even integer >= 2
        CapacityExceeded: If n exceeds MAX_QUBITS
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2 or n % 2:
        raise InvalidQubitCount(f"qubit count must be an even integer >= 2, got {n!r}")
    if n > MAX_QUBITS:
        raise CapacityExceeded(f"{n} qubits exceed the dense storage cap of {MAX_QUBITS}")


def make_state(n: int, amplitudes: Union[Sequence, np.ndarray],
               label: Optional[str] = None,
               backend: Optional[Backend] = None,
               norm_squared: Union[Fraction, float, None] = None) -> PureState:
    """Wrap a coefficient sequence as a state, verbatim (no normalization).

    The backend is inferred when not given: numpy arrays, floats and complex
    numbers give a float state; ints, Fractions, rational strings and
    ExactScalars give an exact one.

    Args:
        n: Even number of qubits
        amplitudes: 2^n coefficients
        label: Optional family name
        backend: Force the exact or float representation
        norm_squared: Recorded squared norm overriding the computed one

    Returns:
        PureState: The validated state

    Raises:
        InvalidQubitCount: Odd or too small n
        DimensionMismatch: Wrong number of amplitudes
        ZeroState: All amplitudes zero
    """
    check_qubit_count(n)
    if not isinstance(amplitudes, np.ndarray):
        amplitudes = list(amplitudes)
    if backend is None:
        backend = _infer_backend(amplitudes)
    return PureState(n, amplitudes, backend, label, norm_squared)


def _infer_backend(amplitudes) -> Backend:
    if isinstance(amplitudes, np.ndarray):
        return Backend.FLOAT
    if any(isinstance(a, (float, complex, np.floating, np.complexfloating)) for a in amplitudes):
        return Backend.FLOAT
    return Backend.EXACT


def _from_terms(n: int, terms: Dict[int, int], label: str) -> PureState:
    vector = [ZERO] * (1 << n)
    for index, coefficient in terms.items():
        vector[index] = ExactScalar(coefficient)
    return PureState(n, tuple(vector), Backend.EXACT, label)


def _accumulate(pairs: Iterable[Tuple[int, int]]) -> Dict[int, int]:
    terms: Dict[int, int] = {}
    for index, coefficient in pairs:
        terms[index] = terms.get(index, 0) + coefficient
    return {i: c for i, c in terms.items() if c != 0}


def gen_ghz(n: int) -> PureState:
    """GHZ state |0...0> + |1...1> (norm squared 2)."""
    check_qubit_count(n)
    return _from_terms(n, {0: 1, (1 << n) - 1: 1}, 'ghz')


def gen_dicke(l: int, n: int) -> PureState:
    """Symmetric Dicke state |l,n>: every basis index of Hamming weight l.

    Args:
        l: Number of excitations, 1 <= l <= n-1
        n: Even number of qubits

    Raises:
        InvalidExcitation: If l is out of range
    """
    check_qubit_count(n)
    if isinstance(l, bool) or not isinstance(l, int) or not 1 <= l <= n - 1:
        raise InvalidExcitation(f"excitations must lie in 1..{n - 1}, got {l!r}")
    terms = {sum(1 << bit for bit in bits): 1 for bits in combinations(range(n), l)}
    label = 'w' if l == 1 else f'dicke({l},{n})'
    return _from_terms(n, terms, label)


def gen_w(n: int) -> PureState:
    """W state, the Dicke state |1,n>."""
    return gen_dicke(1, n)


def _chi1(n: int) -> Iterator[Tuple[int, int]]:
    side = 1 << (n // 2)
    for m in range(side - 1):
        yield (side + 1) * m, 1
    yield (1 << n) - 1, -1


def _chi2(n: int) -> Iterator[Tuple[int, int]]:
    side = 1 << (n // 2)
    for m in range(1, side):
        yield (side - 1) * m, 1
    yield (1 << n) - side, -1


def _chi3(n: int) -> Iterator[Tuple[int, int]]:
    for m in range((1 << (n // 2 - 1)) - 1):
        base = (1 << (n // 2 + 1)) * m + 4 * m
        yield base, 1
        yield base + 3, 1
    yield (1 << n) - 4, 1
    yield (1 << n) - 1, -1


def _chi4(n: int) -> Iterator[Tuple[int, int]]:
    for m in range(1, 1 << (n // 2 - 1)):
        base = (1 << (n // 2 + 1)) * m - 4 * m
        yield base + 2, 1
        yield base + 1, 1
    yield (1 << n) - (1 << (n // 2 + 1)) + 2, 1
    yield (1 << n) - (1 << (n // 2 + 1)) + 1, -1


def _chi5(n: int) -> Iterator[Tuple[int, int]]:
    half = 1 << (n // 2 - 1)
    offset = 3 << (n - 2)
    for m in range(half):
        yield (half + 1) * m, 1
    for m in range(half - 1):
        yield (half + 1) * m + offset, 1
    yield (1 << n) - 1, -1


def _chi6(n: int) -> Iterator[Tuple[int, int]]:
    half = 1 << (n // 2 - 1)
    for m in range(1, half + 1):
        yield (1 << (n - 1)) + (half - 1) * m, 1
    for m in range(1, half):
        yield (1 << (n - 2)) + (half - 1) * m, 1
    yield (1 << (n - 1)) - half, -1


def _chi7(n: int) -> Iterator[Tuple[int, int]]:
    if n == 4:
        yield from ((0, 1), (6, 1), (9, 1), (15, -1))
        return
    side = 1 << (n // 2)
    offset = 3 << (n - 2)
    for m in range(1 << (n // 2 - 3)):
        even_row = 2 * side * m + 8 * m
        odd_row = (2 * m + 1) * side + 8 * m
        for index in (even_row, odd_row + 2, even_row + 5, odd_row + 7):
            yield index, 1
            yield index + offset, 1
    # the last sum already placed +1 here, so the net coefficient is -1
    yield (1 << n) - 1, -2


_CHI_TERMS = {1: _chi1, 2: _chi2, 3: _chi3, 4: _chi4, 5: _chi5, 6: _chi6, 7: _chi7}


def gen_chi(k: int, n: int) -> PureState:
    """The chi family: 2^(n/2)-term states built on structured matrix positions.

    The stored vector has entries +1/-1 (norm squared 2^(n/2)); the textbook
    state divides by 2^(n/4).

    Args:
        k: Family member 1..7
        n: Even number of qubits (n >= 4 for k = 7)

    Raises:
        InvalidFamily: k outside 1..7
        UnsupportedFamily: k = 7 with n = 2
    """
    if isinstance(k, bool) or k not in _CHI_TERMS:
        raise InvalidFamily(f"chi index must be 1..7, got {k!r}")
    check_qubit_count(n)
    if k == 7 and n < 4:
        raise UnsupportedFamily("chi7 is defined for n >= 4 only")
    state = _from_terms(n, _accumulate(_CHI_TERMS[k](n)), f'chi{k}')
    logger.debug(f"Generated chi{k} for n={n} with {state.nonzero_count()} terms")
    return state


def gen_family(name: str, n: int, l: Optional[int] = None) -> PureState:
    """Generate a named family: ``ghz``, ``w``, ``dicke`` (needs l) or ``chi1``..``chi7``.

    Raises:
        InvalidFamily: Unknown name, or dicke without an excitation number
    """
    name = name.lower()
    if name == 'ghz':
        return gen_ghz(n)
    if name == 'w':
        return gen_w(n)
    if name == 'dicke':
        if l is None:
            raise InvalidFamily("the dicke family needs an excitation number l")
        return gen_dicke(l, n)
    if name.startswith('chi') and name[3:].isdigit():
        return gen_chi(int(name[3:]), n)
    raise InvalidFamily(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def nonzero_count(state: PureState) -> int:
    """Number of strictly nonzero amplitudes."""
    return state.nonzero_count()


def random_exact_scalar(rng: np.random.Generator, real: bool = False) -> ExactScalar:
    """Small random Gaussian rational p/q + i r/s."""
    low, high = EXACT_NUMERATOR_RANGE
    d_low, d_high = EXACT_DENOMINATOR_RANGE
    re_part = Fraction(int(rng.integers(low, high + 1)), int(rng.integers(d_low, d_high + 1)))
    if real:
        return ExactScalar(re_part)
    im_part = Fraction(int(rng.integers(low, high + 1)), int(rng.integers(d_low, d_high + 1)))
    return ExactScalar(re_part, im_part)


def random_state(n: int, rng: Union[int, np.random.Generator, None] = None,
                 backend: Backend = Backend.EXACT, real: bool = False) -> PureState:
    """Random unnormalized state for property checks.

    Exact amplitudes are small Gaussian rationals (real rationals with
    ``real=True``); float amplitudes have real and imaginary parts uniform in
    [-1, 1]. Deterministic for a given seed.
    """
    check_qubit_count(n)
    rng = np.random.default_rng(rng)
    size = 1 << n
    while True:
        if backend is Backend.EXACT:
            values = tuple(random_exact_scalar(rng, real) for _ in range(size))
            if any(not v.is_zero for v in values):
                return PureState(n, values, Backend.EXACT)
        else:
            values = rng.uniform(-1.0, 1.0, size)
            if not real:
                values = values + 1j * rng.uniform(-1.0, 1.0, size)
            if np.any(values != 0):
                return PureState(n, values, Backend.FLOAT)
