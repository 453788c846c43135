"""Determinant evaluation for coefficient matrices.

Two backends are provided:

1. Exact: every column is multiplied by the lcm of its denominators, the
   resulting Gaussian-integer matrix goes through fraction-free Bareiss
   elimination, and the extracted factor is divided back out.
2. Float: numpy's pivoted LU through ``slogdet``, kept in log space as
   (log|det|, phase) so invariants far below the double underflow threshold
   stay comparable.

A Laplace cofactor expansion serves as an independent oracle for small
matrices.

Example:
    >>> det_exact([[ExactScalar(1), ExactScalar(2)], [ExactScalar(3), ExactScalar(4)]])
    ExactScalar(-2)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union
import cmath
import logging
import math

import numpy as np

from slocc.constants import EXACT_MAX_DIM, FLOAT_MAX_DIM, ORACLE_MAX_DIM, ZERO_FACTOR
from slocc.matrices import CoeffMatrix, InvariantKind, build
from slocc.scalars import Backend, ExactScalar, wrap_phase, ONE
from slocc.states import PureState
from slocc.utils.errors import CapacityExceeded, DimensionMismatch, OracleTooLarge

logger = logging.getLogger(__name__)

GaussianInt = Tuple[int, int]
MatrixLike = Union[CoeffMatrix, np.ndarray, Sequence[Sequence]]


@dataclass(frozen=True)
class LogComplex:
    """Complex number stored as (natural log of modulus, phase).

    Attributes:
        log_magnitude (float): ln|z|, or -inf for zero
        phase (float): arg z in (-pi, pi]; meaningless (kept at 0) for zero
    """
    log_magnitude: float
    phase: float = 0.0

    @classmethod
    def zero(cls) -> LogComplex:
        return cls(-math.inf, 0.0)

    @classmethod
    def from_complex(cls, value: complex) -> LogComplex:
        if value == 0:
            return cls.zero()
        return cls(math.log(abs(value)), wrap_phase(cmath.phase(value)))

    @classmethod
    def from_exact(cls, value: ExactScalar) -> LogComplex:
        if value.is_zero:
            return cls.zero()
        return cls(value.log_abs(), value.phase())

    @property
    def is_zero(self) -> bool:
        return self.log_magnitude == -math.inf

    def to_complex(self) -> complex:
        """Linear value; underflows to 0 for very small magnitudes."""
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_magnitude), self.phase)


@dataclass(frozen=True)
class InvariantValue:
    """Value of one determinant invariant on one state.

    Attributes:
        kind (InvariantKind): Which of the four invariants
        degree (int): Polynomial degree, equal to the matrix dimension 2^(n/2)
        raw: Determinant of the stored (possibly unnormalized) amplitudes
        normalized: raw / norm_squared^(degree/2)
        backend (Backend): EXACT (ExactScalar values) or FLOAT (LogComplex values)
        log_bound (Optional[float]): ln of the Hadamard bound (float backend only)
    """
    kind: InvariantKind
    degree: int
    raw: Union[ExactScalar, LogComplex]
    normalized: Union[ExactScalar, LogComplex]
    backend: Backend
    log_bound: Optional[float] = None

    def vanishes(self, zero_factor: float = ZERO_FACTOR) -> bool:
        """Zero test: exact equality, or |det| <= zero_factor * Hadamard bound."""
        if self.backend is Backend.EXACT:
            return self.raw.is_zero
        if self.raw.is_zero:
            return True
        if self.log_bound is None:
            return False
        return self.raw.log_magnitude <= math.log(zero_factor) + self.log_bound


def _as_rows(matrix: MatrixLike) -> List[list]:
    if isinstance(matrix, CoeffMatrix):
        return matrix.rows()
    if isinstance(matrix, np.ndarray):
        return matrix.tolist()
    return [list(row) for row in matrix]


def _check_square(rows: List[list]) -> int:
    dim = len(rows)
    if any(len(row) != dim for row in rows):
        raise DimensionMismatch("determinant needs a square matrix")
    return dim


def _gmul(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _gexquo(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    # exact division in Z[i]; Bareiss guarantees divisibility
    norm = b[0] * b[0] + b[1] * b[1]
    re_part = a[0] * b[0] + a[1] * b[1]
    im_part = a[1] * b[0] - a[0] * b[1]
    return re_part // norm, im_part // norm


def _bareiss(m: List[List[GaussianInt]]) -> GaussianInt:
    """Fraction-free elimination over Z[i]; destroys its input."""
    dim = len(m)
    sign = 1
    previous: GaussianInt = (1, 0)
    for k in range(dim - 1):
        if m[k][k] == (0, 0):
            swap = next((i for i in range(k + 1, dim) if m[i][k] != (0, 0)), None)
            if swap is None:
                return 0, 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, dim):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, dim):
                a = _gmul(row_i[j], pivot)
                b = _gmul(factor, row_k[j])
                row_i[j] = _gexquo((a[0] - b[0], a[1] - b[1]), previous)
            row_i[k] = (0, 0)
        previous = pivot
    last = m[dim - 1][dim - 1]
    return last if sign > 0 else (-last[0], -last[1])


def det_exact(matrix: MatrixLike) -> ExactScalar:
    """Exact determinant of a matrix of Gaussian rationals.

    Args:
        matrix: CoeffMatrix or nested sequence of ExactScalar-compatible entries

    Returns:
        ExactScalar: The determinant (zero is a valid result)

    Raises:
        CapacityExceeded: If the dimension exceeds EXACT_MAX_DIM
    """
    rows = [[ExactScalar.coerce(e) for e in row] for row in _as_rows(matrix)]
    dim = _check_square(rows)
    if dim > EXACT_MAX_DIM:
        raise CapacityExceeded(f"exact determinant limited to dim {EXACT_MAX_DIM}, got {dim}")
    if dim == 0:
        return ONE

    integers: List[List[GaussianInt]] = [[(0, 0)] * dim for _ in range(dim)]
    extracted = 1
    for j in range(dim):
        column_lcm = 1
        for i in range(dim):
            entry = rows[i][j]
            column_lcm = lcm(column_lcm, entry.re.denominator, entry.im.denominator)
        extracted *= column_lcm
        for i in range(dim):
            entry = rows[i][j]
            integers[i][j] = (entry.re.numerator * (column_lcm // entry.re.denominator),
                              entry.im.numerator * (column_lcm // entry.im.denominator))

    re_part, im_part = _bareiss(integers)
    logger.debug(f"Exact determinant of dim {dim}, extracted factor {extracted}")
    return ExactScalar(Fraction(re_part, extracted), Fraction(im_part, extracted))


def det_float(matrix: MatrixLike) -> LogComplex:
    """Log-domain determinant from numpy's pivoted LU (``slogdet``).

    A zero pivot (sign 0) gives an exact zero.

    Raises:
        CapacityExceeded: If the dimension exceeds FLOAT_MAX_DIM
    """
    if isinstance(matrix, CoeffMatrix):
        a = matrix.to_numpy()
    else:
        a = np.array(matrix, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch("determinant needs a square matrix")
    dim = a.shape[0]
    if dim > FLOAT_MAX_DIM:
        raise CapacityExceeded(f"float determinant limited to dim {FLOAT_MAX_DIM}, got {dim}")

    sign, log_magnitude = np.linalg.slogdet(a)
    if sign == 0 or not np.isfinite(log_magnitude):
        return LogComplex.zero()
    return LogComplex(float(log_magnitude), wrap_phase(float(np.angle(sign))))


def cofactor_oracle(matrix: MatrixLike):
    """Determinant by Laplace expansion along the first row.

    Works on ExactScalar or complex entries and returns the same type. Meant
    as an independent check of det_exact and det_float.

    Raises:
        OracleTooLarge: If the dimension exceeds ORACLE_MAX_DIM
    """
    rows = _as_rows(matrix)
    dim = _check_square(rows)
    if dim > ORACLE_MAX_DIM:
        raise OracleTooLarge(f"cofactor oracle limited to dim {ORACLE_MAX_DIM}, got {dim}")
    if dim == 0:
        return ONE
    return _laplace(rows)


def _laplace(rows: List[list]):
    if len(rows) == 1:
        return rows[0][0]
    total = None
    for j, entry in enumerate(rows[0]):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * _laplace(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def log_hadamard_bound(matrix: MatrixLike) -> float:
    """ln of the product of the column 2-norms (an upper bound on |det|)."""
    a = matrix.to_numpy() if isinstance(matrix, CoeffMatrix) else np.asarray(matrix, dtype=np.complex128)
    norms = np.linalg.norm(a, axis=0)
    if np.any(norms == 0):
        return -math.inf
    return float(np.sum(np.log(norms)))


def evaluate(kind: InvariantKind, state: PureState,
             backend: Optional[Backend] = None) -> InvariantValue:
    """Evaluate one invariant of a state.

    Args:
        kind: Which invariant
        state: The state (converted when the backend differs from its own)
        backend: EXACT or FLOAT; defaults to the state's backend

    Returns:
        InvariantValue: raw and normalized determinant with provenance
    """
    backend = backend or state.backend
    source = state.to_exact() if backend is Backend.EXACT else state.to_float()
    matrix = build(kind, source)
    degree = matrix.dim
    half = degree // 2

    if backend is Backend.EXACT:
        raw = det_exact(matrix)
        scale = Fraction(source.norm_squared) ** half
        normalized = ExactScalar(raw.re / scale, raw.im / scale)
        return InvariantValue(kind, degree, raw, normalized, backend)

    array = matrix.to_numpy()
    raw = det_float(array)
    if raw.is_zero:
        normalized = raw
    else:
        normalized = LogComplex(raw.log_magnitude - half * math.log(source.norm_squared), raw.phase)
    return InvariantValue(kind, degree, raw, normalized, backend, log_hadamard_bound(array))
