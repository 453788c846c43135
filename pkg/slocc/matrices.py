"""Coefficient matrices of the four determinant invariants.

Each invariant kind rearranges the 2^n amplitudes of an even-n state into a
2^(n/2) x 2^(n/2) matrix through a fixed index map; the invariant is the
determinant of that matrix. The four layouts, with h = 2^(n/2-1):

- Type I (Theta): amplitude blocks are the columns,
  ``index = 2^(n/2)*col + row``.
- Type II (Pi): amplitude blocks are the rows, even amplitudes on even rows
  and odd amplitudes on odd rows, ``index = 2^(n/2+1)*r + 2*col + p`` for
  ``row = 2r + p``.
- Type III (Gamma): the left half holds a_0..a_(2^(n-1)-1) row by row in
  blocks of h, the right half holds the upper half of the vector the same way.
- Type IV (Omega): rows come in groups of four; the first two rows of a group
  hold even amplitudes, the last two odd ones, each half split as in type III.

For n = 2 every kind uses the same layout ``[[a0, a2], [a1, a3]]``.

Example:
    >>> index_map(InvariantKind.TYPE_II, 4, 3, 1)
    11
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Tuple, Union
import logging

import numpy as np

from slocc.scalars import Backend, ExactScalar
from slocc.states import PureState, check_qubit_count
from slocc.utils.errors import IndexOutOfRange, InvalidFamily

logger = logging.getLogger(__name__)


class InvariantKind(Enum):
    """The four coefficient-matrix layouts."""
    TYPE_I = 'I'
    TYPE_II = 'II'
    TYPE_III = 'III'
    TYPE_IV = 'IV'

    @property
    def number(self) -> int:
        return _KIND_ORDER.index(self) + 1

    @property
    def symbol(self) -> str:
        return KIND_SYMBOLS[self]


_KIND_ORDER = (InvariantKind.TYPE_I, InvariantKind.TYPE_II,
               InvariantKind.TYPE_III, InvariantKind.TYPE_IV)

ALL_KINDS: Tuple[InvariantKind, ...] = _KIND_ORDER

KIND_SYMBOLS = {
    InvariantKind.TYPE_I: 'Θ',
    InvariantKind.TYPE_II: 'Π',
    InvariantKind.TYPE_III: 'Γ',
    InvariantKind.TYPE_IV: 'Ω',
}

_KIND_ALIASES = {
    '1': InvariantKind.TYPE_I, 'i': InvariantKind.TYPE_I, 'theta': InvariantKind.TYPE_I,
    '2': InvariantKind.TYPE_II, 'ii': InvariantKind.TYPE_II, 'pi': InvariantKind.TYPE_II,
    '3': InvariantKind.TYPE_III, 'iii': InvariantKind.TYPE_III, 'gamma': InvariantKind.TYPE_III,
    '4': InvariantKind.TYPE_IV, 'iv': InvariantKind.TYPE_IV, 'omega': InvariantKind.TYPE_IV,
}


def parse_kind(value: Union[str, int, InvariantKind]) -> InvariantKind:
    """Accept ``1..4``, ``I..IV``, ``theta/pi/gamma/omega`` or a kind."""
    if isinstance(value, InvariantKind):
        return value
    kind = _KIND_ALIASES.get(str(value).strip().lower())
    if kind is None:
        raise InvalidFamily(f"unknown invariant kind {value!r}")
    return kind


def side_length(n: int) -> int:
    """Matrix dimension 2^(n/2), which is also the invariant's degree."""
    return 1 << (n // 2)


def _index(kind: InvariantKind, n: int, row, col):
    # works elementwise on numpy integer arrays as well as on ints
    side = 1 << (n // 2)
    if n == 2 or kind is InvariantKind.TYPE_I:
        return side * col + row
    if kind is InvariantKind.TYPE_II:
        return 2 * side * (row // 2) + 2 * col + row % 2
    half = side // 2
    upper = col // half
    if kind is InvariantKind.TYPE_III:
        return upper * (1 << (n - 1)) + half * row + (col - upper * half)
    group, position = row // 4, row % 4
    return (upper * (1 << (n - 1)) + side * (2 * group + position % 2)
            + 2 * (col % half) + position // 2)


def index_map(kind: InvariantKind, n: int, row: int, col: int) -> int:
    """Amplitude index stored at (row, col) of the kind's coefficient matrix.

    Raises:
        InvalidQubitCount: If n is not even and >= 2
        IndexOutOfRange: If row or col lies outside 0..2^(n/2)-1
    """
    check_qubit_count(n)
    side = side_length(n)
    if not (0 <= row < side and 0 <= col < side):
        raise IndexOutOfRange(f"({row}, {col}) outside a {side}x{side} matrix")
    return int(_index(kind, n, row, col))


@lru_cache(maxsize=64)
def _grid(kind: InvariantKind, n: int) -> np.ndarray:
    side = side_length(n)
    rows, cols = np.indices((side, side), dtype=np.int64)
    grid = _index(kind, n, rows, cols)
    if __debug__:
        _check_bijection(kind, n, grid)
    grid.setflags(write=False)
    return grid


def index_grid(kind: InvariantKind, n: int) -> np.ndarray:
    """Full dim x dim grid of amplitude indices (read-only)."""
    check_qubit_count(n)
    return _grid(kind, n)


def _check_bijection(kind: InvariantKind, n: int, grid: np.ndarray) -> None:
    counts = np.bincount(grid.ravel(), minlength=1 << n)
    if counts.size != 1 << n or not np.all(counts == 1):
        raise AssertionError(f"type {kind.value} index map is not a bijection for n={n}")


@dataclass(frozen=True)
class CoeffMatrix:
    """Coefficient matrix copied out of a state.

    Attributes:
        kind (InvariantKind): Layout used
        n (int): Qubit count of the source state
        entries: Tuple of row tuples of ExactScalar, or a complex128 array
        backend (Backend): Representation of the entries
    """
    kind: InvariantKind
    n: int
    entries: Union[Tuple[Tuple[ExactScalar, ...], ...], np.ndarray]
    backend: Backend

    @property
    def dim(self) -> int:
        return side_length(self.n)

    def rows(self) -> list:
        """Mutable list-of-lists copy of the entries."""
        if self.backend is Backend.EXACT:
            return [list(row) for row in self.entries]
        return self.entries.tolist()

    def to_numpy(self) -> np.ndarray:
        """Complex128 copy of the entries."""
        if self.backend is Backend.EXACT:
            return np.array([[e.to_complex() for e in row] for row in self.entries],
                            dtype=np.complex128)
        return np.array(self.entries, dtype=np.complex128, copy=True)


def build(kind: InvariantKind, state: PureState) -> CoeffMatrix:
    """Copy a state's amplitudes into the kind's coefficient matrix.

    Args:
        kind: Invariant layout
        state: Source state

    Returns:
        CoeffMatrix: entries[row][col] = amplitudes[index_map(kind, n, row, col)]
    """
    grid = index_grid(kind, state.n)
    if state.backend is Backend.EXACT:
        amplitudes = state.amplitudes
        entries = tuple(tuple(amplitudes[i] for i in row) for row in grid.tolist())
    else:
        entries = state.amplitudes[grid]
    logger.debug(f"Built type {kind.value} matrix of dim {grid.shape[0]} for n={state.n}")
    return CoeffMatrix(kind, state.n, entries, state.backend)
