"""Invertible local operators and the covariance checks.

A local operator is a 2x2 invertible matrix acting on one qubit; a chain holds
one operator per qubit and acts as their tensor product. Under a chain every
determinant invariant P of an even-n state transforms as

    P(A_1 x ... x A_n |psi>) = P(|psi>) * (det A_1 ... det A_n)^(2^((n-2)/2))

and this module checks that equation exactly or in log space, for random
chains and for one operator at a time on every qubit position.

Qubit l splits the basis index at bit weight 2^(n-l-1) (qubit 0 is the most
significant bit), so for 0 <= k < 2^l and 0 <= s < 2^(n-l-1):

    a[2^(n-l) k + s]              = t1 c[2^(n-l) k + s] + t2 c[2^(n-l) k + 2^(n-l-1) + s]
    a[2^(n-l) k + 2^(n-l-1) + s]  = t3 c[2^(n-l) k + s] + t4 c[2^(n-l) k + 2^(n-l-1) + s]
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union
import logging
import math

import numpy as np

from slocc.constants import (
    DET_CEILING,
    DET_FLOOR,
    LOG_TOLERANCE,
    MAX_ATTEMPTS,
    MIN_OPERATOR_DET,
    PHASE_TOLERANCE,
    ZERO_FACTOR,
)
from slocc.determinants import InvariantValue, LogComplex, evaluate
from slocc.matrices import InvariantKind
from slocc.scalars import Backend, ExactScalar, float_phase, float_scalar, wrap_phase
from slocc.states import PureState, random_exact_scalar
from slocc.utils.errors import (
    DimensionMismatch,
    GenerationFailed,
    IndexOutOfRange,
    NotInvertible,
)

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.Generator, None]


@dataclass(frozen=True)
class LocalOperator:
    """Invertible 2x2 matrix [[t1, t2], [t3, t4]] acting on a single qubit.

    Raises:
        NotInvertible: If the determinant is exactly zero (exact backend) or
            smaller than MIN_OPERATOR_DET in magnitude (float backend)
    """
    t1: Union[ExactScalar, complex]
    t2: Union[ExactScalar, complex]
    t3: Union[ExactScalar, complex]
    t4: Union[ExactScalar, complex]
    backend: Backend = Backend.EXACT

    def __post_init__(self):
        convert = ExactScalar.coerce if self.backend is Backend.EXACT else float_scalar
        for name in ('t1', 't2', 't3', 't4'):
            object.__setattr__(self, name, convert(getattr(self, name)))
        det = self.det
        if self.backend is Backend.EXACT:
            if det.is_zero:
                raise NotInvertible("local operator has zero determinant")
        elif abs(det) < MIN_OPERATOR_DET:
            raise NotInvertible(f"|det| = {abs(det):.3g} below {MIN_OPERATOR_DET}")

    @classmethod
    def from_matrix(cls, matrix, backend: Optional[Backend] = None) -> LocalOperator:
        """Build from [[t1, t2], [t3, t4]]; float entries give a float operator."""
        (t1, t2), (t3, t4) = matrix
        if backend is None:
            floating = any(isinstance(t, (float, complex, np.floating, np.complexfloating))
                           for t in (t1, t2, t3, t4))
            backend = Backend.FLOAT if floating else Backend.EXACT
        return cls(t1, t2, t3, t4, backend)

    @classmethod
    def identity(cls, backend: Backend = Backend.EXACT) -> LocalOperator:
        return cls(1, 0, 0, 1, backend)

    @classmethod
    def bit_flip(cls, backend: Backend = Backend.EXACT) -> LocalOperator:
        return cls(0, 1, 1, 0, backend)

    @property
    def det(self):
        return self.t1 * self.t4 - self.t2 * self.t3

    @property
    def is_identity(self) -> bool:
        return self.t1 == 1 and self.t2 == 0 and self.t3 == 0 and self.t4 == 1

    def inverse(self) -> LocalOperator:
        det = self.det
        return LocalOperator(self.t4 / det, -self.t2 / det, -self.t3 / det, self.t1 / det,
                             self.backend)

    def to_float(self) -> LocalOperator:
        if self.backend is Backend.FLOAT:
            return self
        return LocalOperator(self.t1, self.t2, self.t3, self.t4, Backend.FLOAT)

    def to_exact(self) -> LocalOperator:
        if self.backend is Backend.EXACT:
            return self
        return LocalOperator(*(ExactScalar.coerce(complex(t)) for t in
                               (self.t1, self.t2, self.t3, self.t4)), Backend.EXACT)

    def converted(self, backend: Backend) -> LocalOperator:
        return self.to_exact() if backend is Backend.EXACT else self.to_float()

    def as_array(self) -> np.ndarray:
        op = self.to_float()
        return np.array([[op.t1, op.t2], [op.t3, op.t4]], dtype=np.complex128)


@dataclass(frozen=True)
class LocalOperatorChain:
    """One local operator per qubit, qubit 0 first."""
    ops: Tuple[LocalOperator, ...]

    def __post_init__(self):
        object.__setattr__(self, 'ops', tuple(self.ops))
        if any(not isinstance(op, LocalOperator) for op in self.ops):
            raise TypeError("chain members must be LocalOperator instances")

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def n(self) -> int:
        return len(self.ops)

    @classmethod
    def uniform(cls, op: LocalOperator, n: int) -> LocalOperatorChain:
        """The same operator on every qubit."""
        return cls((op,) * n)

    @classmethod
    def single(cls, n: int, qubit: int, op: LocalOperator) -> LocalOperatorChain:
        """Identity everywhere except ``op`` on ``qubit``."""
        if not 0 <= qubit < n:
            raise IndexOutOfRange(f"qubit {qubit} outside 0..{n - 1}")
        identity = LocalOperator.identity(op.backend)
        return cls(tuple(op if l == qubit else identity for l in range(n)))

    def converted(self, backend: Backend) -> LocalOperatorChain:
        return LocalOperatorChain(tuple(op.converted(backend) for op in self.ops))

    def det_product(self):
        """Product of the operator determinants."""
        product = None
        for op in self.ops:
            product = op.det if product is None else product * op.det
        return product

    def log_det_sum(self) -> Tuple[float, float]:
        """(sum of ln|det A_i|, sum of arg det A_i), for the float backend."""
        dets = [complex(op.to_float().det) for op in self.ops]
        return (sum(math.log(abs(d)) for d in dets), sum(float_phase(d) for d in dets))


def apply_single(state: PureState, qubit: int, op: LocalOperator) -> PureState:
    """Apply one local operator to one qubit.

    An exact state with a float operator is computed in float; a float state
    converts an exact operator to float.

    Raises:
        IndexOutOfRange: If qubit is outside 0..n-1
    """
    n = state.n
    if not 0 <= qubit < n:
        raise IndexOutOfRange(f"qubit {qubit} outside 0..{n - 1}")

    if state.backend is Backend.EXACT and op.backend is Backend.EXACT:
        amplitudes = list(state.amplitudes)
        stride = 1 << (n - qubit - 1)
        t1, t2, t3, t4 = op.t1, op.t2, op.t3, op.t4
        for base in range(0, state.dim, stride << 1):
            for i0 in range(base, base + stride):
                i1 = i0 + stride
                c0, c1 = amplitudes[i0], amplitudes[i1]
                amplitudes[i0] = t1 * c0 + t2 * c1
                amplitudes[i1] = t3 * c0 + t4 * c1
        return PureState(n, tuple(amplitudes), Backend.EXACT)

    psi = state.to_float().amplitudes.reshape(1 << qubit, 2, 1 << (n - qubit - 1))
    transformed = np.einsum('ab,kbs->kas', op.as_array(), psi)
    return PureState(n, transformed.reshape(-1), Backend.FLOAT)


def apply_chain(state: PureState, chain: LocalOperatorChain) -> PureState:
    """Apply A_1 x A_2 x ... x A_n (qubit order does not matter).

    Raises:
        DimensionMismatch: If the chain length differs from the qubit count
    """
    if len(chain) != state.n:
        raise DimensionMismatch(f"chain of {len(chain)} operators for {state.n} qubits")
    result = state
    for qubit, op in enumerate(chain.ops):
        if not op.is_identity:
            result = apply_single(result, qubit, op)
    return result


def flip_all(state: PureState) -> PureState:
    """Bit flip on every qubit; maps the Dicke state |l,n> onto |n-l,n>."""
    backend = state.backend
    return apply_chain(state, LocalOperatorChain.uniform(LocalOperator.bit_flip(backend), state.n))


def random_invertible(rng: Seed = None, lo: float = DET_FLOOR, hi: float = DET_CEILING,
                      backend: Backend = Backend.FLOAT) -> LocalOperator:
    """Random operator with lo <= |det| <= hi, resampled until it fits.

    Float entries have real and imaginary parts uniform in [-1, 1]; exact
    entries are small random Gaussian rationals. Deterministic for a seed.

    Args:
        rng: Seed or numpy Generator
        lo: Lower bound on |det|, > 0
        hi: Upper bound on |det|, > lo
        backend: EXACT or FLOAT entries

    Raises:
        GenerationFailed: If no sample fits within MAX_ATTEMPTS draws
    """
    if not 0 < lo < hi:
        raise GenerationFailed(f"determinant bounds must satisfy 0 < lo < hi, got {lo}, {hi}")
    rng = np.random.default_rng(rng)
    lo_squared, hi_squared = Fraction(lo) ** 2, Fraction(hi) ** 2
    for attempt in range(MAX_ATTEMPTS):
        if backend is Backend.EXACT:
            entries = [random_exact_scalar(rng) for _ in range(4)]
            det = entries[0] * entries[3] - entries[1] * entries[2]
            fits = lo_squared <= det.abs2() <= hi_squared
        else:
            entries = list(rng.uniform(-1.0, 1.0, 4) + 1j * rng.uniform(-1.0, 1.0, 4))
            det = entries[0] * entries[3] - entries[1] * entries[2]
            fits = lo <= abs(det) <= hi
        if fits:
            if attempt:
                logger.debug(f"Random operator accepted after {attempt + 1} draws")
            return LocalOperator(*entries, backend)
    raise GenerationFailed(f"no operator with {lo} <= |det| <= {hi} in {MAX_ATTEMPTS} draws")


def random_chain(n: int, rng: Seed = None, lo: float = DET_FLOOR, hi: float = DET_CEILING,
                 backend: Backend = Backend.FLOAT) -> LocalOperatorChain:
    """n independent random invertible operators drawn from one generator."""
    rng = np.random.default_rng(rng)
    return LocalOperatorChain(tuple(random_invertible(rng, lo, hi, backend) for _ in range(n)))


def covariance_exponent(n: int) -> int:
    """Exponent 2^((n-2)/2) of the determinant product."""
    return 1 << ((n - 2) // 2)


@dataclass(frozen=True)
class CovarianceReport:
    """Outcome of one covariance check.

    Attributes:
        kind (InvariantKind): Invariant checked
        lhs (InvariantValue): Invariant of the transformed state
        rhs (InvariantValue): Invariant of the original times (prod det)^exponent
        exponent (int): 2^((n-2)/2)
        residual: Exact difference lhs - rhs (ExactScalar), or for the float
            backend |delta ln|P|| + |delta phase| (0 when both sides vanish,
            inf when exactly one does)
        passed (bool): Exact residual is zero / float residual within tolerance
        qubit (Optional[int]): Operator position for single-qubit checks
    """
    kind: InvariantKind
    lhs: InvariantValue
    rhs: InvariantValue
    exponent: int
    residual: Union[ExactScalar, float]
    passed: bool
    qubit: Optional[int] = None

    @property
    def backend(self) -> Backend:
        return self.lhs.backend

    @property
    def magnitude(self) -> float:
        """Residual size as a float (inf past the double range), for picking the worst report."""
        if isinstance(self.residual, ExactScalar):
            try:
                return math.exp(self.residual.log_abs())
            except OverflowError:
                return math.inf
        return self.residual


def covariance_residual(kind: InvariantKind, state: PureState, chain: LocalOperatorChain,
                        backend: Optional[Backend] = None,
                        zero_factor: float = ZERO_FACTOR) -> CovarianceReport:
    """Check P(chain |psi>) = P(|psi>) (prod det A_i)^(2^((n-2)/2)).

    Args:
        kind: Invariant to check
        state: Original state
        chain: One operator per qubit
        backend: EXACT (exact equality) or FLOAT (log-space comparison);
            defaults to the state's backend
        zero_factor: Float zero-test factor against the Hadamard bound

    Raises:
        DimensionMismatch: If the chain length differs from the qubit count
    """
    backend = backend or state.backend
    source = state.to_exact() if backend is Backend.EXACT else state.to_float()
    chain = chain.converted(backend)
    transformed = apply_chain(source, chain)
    exponent = covariance_exponent(state.n)

    lhs = evaluate(kind, transformed, backend)
    original = evaluate(kind, source, backend)
    half = lhs.degree // 2

    if backend is Backend.EXACT:
        rhs_raw = original.raw * chain.det_product() ** exponent
        scale = Fraction(transformed.norm_squared) ** half
        rhs = InvariantValue(kind, lhs.degree, rhs_raw,
                             ExactScalar(rhs_raw.re / scale, rhs_raw.im / scale), backend)
        residual = lhs.raw - rhs_raw
        return CovarianceReport(kind, lhs, rhs, exponent, residual, residual.is_zero)

    log_det, phase_det = chain.log_det_sum()
    if original.raw.is_zero:
        rhs_raw = LogComplex.zero()
        rhs_normalized = rhs_raw
    else:
        rhs_raw = LogComplex(original.raw.log_magnitude + exponent * log_det,
                             wrap_phase(original.raw.phase + exponent * phase_det))
        rhs_normalized = LogComplex(rhs_raw.log_magnitude - half * math.log(transformed.norm_squared),
                                    rhs_raw.phase)
    rhs = InvariantValue(kind, lhs.degree, rhs_raw, rhs_normalized, backend)

    # the Hadamard bound is not covariant; only a vanishing original gets the zero test
    if original.vanishes(zero_factor):
        bound = max(lhs.log_bound, original.log_bound + exponent * log_det)
        if lhs.raw.is_zero or lhs.raw.log_magnitude <= math.log(zero_factor) + bound:
            return CovarianceReport(kind, lhs, rhs, exponent, 0.0, True)
        logger.warning(f"Type {kind.value}: original vanishes but the transformed value does not")
        return CovarianceReport(kind, lhs, rhs, exponent, math.inf, False)
    if lhs.raw.is_zero:
        logger.warning(f"Type {kind.value}: transformed value is zero but the original is not")
        return CovarianceReport(kind, lhs, rhs, exponent, math.inf, False)

    log_gap = abs(lhs.raw.log_magnitude - rhs_raw.log_magnitude)
    phase_gap = abs(wrap_phase(lhs.raw.phase - rhs_raw.phase))
    passed = log_gap <= LOG_TOLERANCE and phase_gap <= PHASE_TOLERANCE
    return CovarianceReport(kind, lhs, rhs, exponent, log_gap + phase_gap, passed)


def per_qubit_covariance_suite(kind: InvariantKind, state: PureState,
                               backend: Optional[Backend] = None, rng: Seed = None,
                               lo: float = DET_FLOOR, hi: float = DET_CEILING) -> List[CovarianceReport]:
    """One random single-qubit operator at each position l = 0..n-1.

    Returns:
        List[CovarianceReport]: n reports ordered by qubit position
    """
    backend = backend or state.backend
    rng = np.random.default_rng(rng)
    reports = []
    for qubit in range(state.n):
        op = random_invertible(rng, lo, hi, backend)
        chain = LocalOperatorChain.single(state.n, qubit, op)
        reports.append(replace(covariance_residual(kind, state, chain, backend), qubit=qubit))
    return reports


def covariance_trials(kinds: Iterable[InvariantKind], state: PureState, trials: int,
                      rng: Seed = None, backend: Optional[Backend] = None,
                      lo: float = DET_FLOOR, hi: float = DET_CEILING,
                      on_trial=None) -> List[CovarianceReport]:
    """Random-chain covariance checks; every trial draws one chain shared by all kinds.

    Args:
        kinds: Invariants to check
        state: Original state
        trials: Number of random chains
        rng: Seed or numpy Generator
        backend: Defaults to the state's backend
        on_trial: Optional callback invoked after each trial (progress display)

    Returns:
        List[CovarianceReport]: ordered by trial, then by kind
    """
    backend = backend or state.backend
    rng = np.random.default_rng(rng)
    kinds = tuple(kinds)
    reports = []
    for _ in range(trials):
        chain = random_chain(state.n, rng, lo, hi, backend)
        reports.extend(covariance_residual(kind, state, chain, backend) for kind in kinds)
        if on_trial is not None:
            on_trial()
    failures = sum(not r.passed for r in reports)
    if failures:
        logger.warning(f"{failures} of {len(reports)} covariance checks failed")
    return reports
