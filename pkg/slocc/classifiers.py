"""Vanishing signatures, inequivalence verdicts and entanglement-measure readouts.

If two states are related by invertible local operators, each invariant of one
is a nonzero multiple of the same invariant of the other. A kind that vanishes
on exactly one of two states therefore separates them; matching signatures
prove nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from slocc.constants import ZERO_FACTOR
from slocc.determinants import InvariantValue, evaluate
from slocc.matrices import ALL_KINDS, InvariantKind
from slocc.scalars import Backend, ExactScalar
from slocc.states import (
    PureState,
    check_qubit_count,
    gen_chi,
    gen_dicke,
    gen_ghz,
    gen_w,
    random_state,
)
from slocc.utils.errors import DimensionMismatch, InvalidQubitCount, UnsupportedFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignatureEntry:
    kind: InvariantKind
    value: InvariantValue
    is_zero: bool


@dataclass(frozen=True)
class Signature:
    """Zero/nonzero pattern of the four invariants on one state.

    Attributes:
        entries (Tuple[SignatureEntry, ...]): One entry per kind, in kind order
        backend (Backend): Backend used for every evaluation
        zero_factor (Optional[float]): Float zero-test factor; None for exact
    """
    entries: Tuple[SignatureEntry, ...]
    backend: Backend
    zero_factor: Optional[float] = None

    @property
    def pattern(self) -> Tuple[bool, ...]:
        """is_zero per kind, in kind order."""
        return tuple(entry.is_zero for entry in self.entries)

    def entry(self, kind: InvariantKind) -> SignatureEntry:
        for entry in self.entries:
            if entry.kind is kind:
                return entry
        raise KeyError(kind)

    def is_zero(self, kind: InvariantKind) -> bool:
        return self.entry(kind).is_zero

    def describe(self) -> str:
        """Compact text such as ``Θ=0 Π≠0 Γ=0 Ω=0``."""
        return ' '.join(f"{e.kind.symbol}{'=' if e.is_zero else '≠'}0" for e in self.entries)


class Outcome(Enum):
    INEQUIVALENT = 'inequivalent'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class Verdict:
    """Result of comparing two signatures.

    ``outcome`` is INEQUIVALENT exactly when ``separating_kinds`` is non-empty.
    """
    outcome: Outcome
    separating_kinds: Tuple[InvariantKind, ...]
    detail: Tuple[Tuple[InvariantKind, bool, bool], ...]
    first: Signature
    second: Signature


def signature(state: PureState, backend: Optional[Backend] = None,
              zero_factor: float = ZERO_FACTOR,
              kinds: Sequence[InvariantKind] = ALL_KINDS) -> Signature:
    """Evaluate every invariant and record which ones vanish.

    Args:
        state: State to classify
        backend: EXACT or FLOAT; defaults to the state's backend
        zero_factor: Float zero test, |det| <= zero_factor * Hadamard bound

    Returns:
        Signature: Entries ordered by kind
    """
    backend = backend or state.backend
    entries = []
    for kind in kinds:
        value = evaluate(kind, state, backend)
        entries.append(SignatureEntry(kind, value, value.vanishes(zero_factor)))
    result = Signature(tuple(entries), backend,
                       zero_factor if backend is Backend.FLOAT else None)
    logger.debug(f"Signature of {state.label or 'state'} (n={state.n}): {result.describe()}")
    return result


def compare(first: PureState, second: PureState, backend: Optional[Backend] = None,
            zero_factor: float = ZERO_FACTOR) -> Verdict:
    """Certify SLOCC inequivalence from differing vanishing patterns.

    Raises:
        DimensionMismatch: If the qubit counts differ
    """
    if first.n != second.n:
        raise DimensionMismatch(f"cannot compare {first.n}-qubit and {second.n}-qubit states")
    if backend is None:
        # float amplitudes convert losslessly, so mixed inputs compare exactly
        backend = first.backend if first.backend is second.backend else Backend.EXACT
    sig_a = signature(first, backend, zero_factor)
    sig_b = signature(second, backend, zero_factor)
    detail = tuple((a.kind, a.is_zero, b.is_zero) for a, b in zip(sig_a.entries, sig_b.entries))
    separating = tuple(kind for kind, zero_a, zero_b in detail if zero_a != zero_b)
    outcome = Outcome.INEQUIVALENT if separating else Outcome.INCONCLUSIVE
    return Verdict(outcome, separating, detail, sig_a, sig_b)


@dataclass(frozen=True)
class Measure:
    """Absolute value of one invariant on the normalized state.

    Attributes:
        kind (InvariantKind): Invariant measured
        backend (Backend): Backend used
        value (float): |P| as a double (0.0 when it underflows)
        log_magnitude (float): ln|P|, -inf when P = 0
        squared (Optional[Fraction]): Exact |P|^2 (exact backend only)
    """
    kind: InvariantKind
    backend: Backend
    value: float
    log_magnitude: float
    squared: Optional[Fraction] = None


def measure(kind: InvariantKind, state: PureState, backend: Optional[Backend] = None) -> Measure:
    """|P| of the normalized state, plus the exact |P|^2 when available."""
    backend = backend or state.backend
    value = evaluate(kind, state, backend)
    if backend is Backend.EXACT:
        normalized = value.normalized
        squared = normalized.abs2()
        log_magnitude = normalized.log_abs()
        return Measure(kind, backend, _linear(log_magnitude), log_magnitude, squared)
    log_magnitude = value.normalized.log_magnitude
    return Measure(kind, backend, _linear(log_magnitude), log_magnitude)


def _linear(log_magnitude: float) -> float:
    if log_magnitude == -math.inf:
        return 0.0
    try:
        return math.exp(log_magnitude)
    except OverflowError:
        return math.inf


def concurrence(state: PureState) -> Measure:
    """Two-qubit concurrence 2|a0 a3 - a1 a2| of the normalized state.

    Raises:
        InvalidQubitCount: If the state is not a two-qubit state
    """
    if state.n != 2:
        raise InvalidQubitCount(f"concurrence is defined for 2 qubits, got {state.n}")
    result = measure(InvariantKind.TYPE_I, state)
    log_magnitude = result.log_magnitude + math.log(2)
    squared = None if result.squared is None else 4 * result.squared
    return Measure(InvariantKind.TYPE_I, result.backend, _linear(log_magnitude),
                   log_magnitude, squared)


def table_states(n: int) -> List[PureState]:
    """GHZ, W, Dicke |l,n> for 2 <= l <= n/2, then chi1..chi7 where defined."""
    check_qubit_count(n)
    states = [gen_ghz(n), gen_w(n)]
    states.extend(gen_dicke(l, n) for l in range(2, n // 2 + 1))
    for k in range(1, 8):
        try:
            states.append(gen_chi(k, n))
        except UnsupportedFamily:
            logger.debug(f"chi{k} skipped at n={n}")
    return states


def vanishing_table(n: int, backend: Backend = Backend.EXACT,
                    zero_factor: float = ZERO_FACTOR) -> List[Tuple[str, Signature]]:
    """Signatures of every named family at n qubits, as (label, signature) rows."""
    return [(state.label, signature(state, backend, zero_factor)) for state in table_states(n)]


def exact_rank(rows: Iterable[Sequence[ExactScalar]]) -> int:
    """Rank of a matrix of Gaussian rationals by row echelon reduction."""
    m = [[ExactScalar.coerce(e) for e in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if not m[r][col].is_zero), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][col]
        for r in range(rank + 1, n_rows):
            if m[r][col].is_zero:
                continue
            factor = m[r][col] / lead
            m[r] = [m[r][c] - factor * m[rank][c] for c in range(n_cols)]
        rank += 1
        if rank == n_rows:
            break
    return rank


@dataclass(frozen=True)
class IndependenceCertificate:
    """Exact rank of the kinds-by-samples value matrix.

    Rank equal to the number of kinds certifies linear independence; a smaller
    rank is inconclusive.
    """
    n: int
    samples: int
    seed: Optional[int]
    rank: int
    values: Tuple[Tuple[ExactScalar, ...], ...]

    @property
    def independent(self) -> bool:
        return self.rank == len(self.values)


def independence_rank(n: int, samples: int = 8, seed: Optional[int] = None,
                      on_sample=None) -> IndependenceCertificate:
    """Evaluate all four invariants on random real-rational states and rank the result."""
    check_qubit_count(n)
    rng = np.random.default_rng(seed)
    columns: List[Dict[InvariantKind, ExactScalar]] = []
    for _ in range(samples):
        state = random_state(n, rng, Backend.EXACT, real=True)
        columns.append({kind: evaluate(kind, state, Backend.EXACT).raw for kind in ALL_KINDS})
        if on_sample is not None:
            on_sample()
    values = tuple(tuple(column[kind] for column in columns) for kind in ALL_KINDS)
    rank = exact_rank(values)
    logger.info(f"Invariant value matrix at n={n} over {samples} samples has rank {rank}")
    return IndependenceCertificate(n, samples, seed, rank, values)
