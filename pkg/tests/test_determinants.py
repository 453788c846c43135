"""Tests for exact, log-domain and cofactor determinants."""
import math
from fractions import Fraction

import numpy as np
import pytest

from slocc.determinants import (
    InvariantValue,
    LogComplex,
    cofactor_oracle,
    det_exact,
    det_float,
    evaluate,
    log_hadamard_bound,
)
from slocc.matrices import ALL_KINDS, InvariantKind
from slocc.scalars import Backend, ExactScalar, wrap_phase
from slocc.states import gen_chi, gen_ghz, make_state, random_exact_scalar, random_state
from slocc.utils.errors import CapacityExceeded, DimensionMismatch, OracleTooLarge


def random_matrix(rng, dim):
    return [[random_exact_scalar(rng) for _ in range(dim)] for _ in range(dim)]


class TestDetExact:

    def test_integer(self):
        assert det_exact([[1, 2], [3, 4]]) == -2

    def test_gaussian(self):
        i = ExactScalar(0, 1)
        assert det_exact([[i, 1], [1, i]]) == -2

    def test_rational(self):
        m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]
        assert det_exact(m) == Fraction(1, 60)

    def test_needs_row_swap(self):
        assert det_exact([[0, 1, 0], [1, 0, 0], [0, 0, 1]]) == -1

    def test_singular(self):
        assert det_exact([[1, 2, 3], [2, 4, 6], [0, 1, 5]]).is_zero
        assert det_exact([[0, 0], [0, 0]]).is_zero

    def test_empty_and_scalar(self):
        assert det_exact([]) == 1
        assert det_exact([["3/7"]]) == Fraction(3, 7)

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            det_exact([[1, 2, 3], [4, 5, 6]])

    def test_capacity(self, monkeypatch):
        monkeypatch.setattr('slocc.determinants.EXACT_MAX_DIM', 2)
        with pytest.raises(CapacityExceeded):
            det_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


class TestOracle:

    def test_too_large(self):
        with pytest.raises(OracleTooLarge):
            cofactor_oracle(np.eye(7))

    def test_complex_entries(self):
        assert cofactor_oracle([[1j, 1], [1, 1j]]) == -2

    @pytest.mark.slow
    def test_exact_matches_cofactor_expansion(self, rng):
        for case in range(1000):
            dim = 1 + case % 6
            m = random_matrix(rng, dim)
            assert det_exact(m) == cofactor_oracle(m), f"case {case}, dim {dim}"


class TestDetFloat:

    def test_simple(self):
        result = det_float([[1, 2], [3, 4]])
        assert result.log_magnitude == pytest.approx(math.log(2))
        assert abs(wrap_phase(result.phase - math.pi)) < 1e-12

    def test_zero_column(self):
        assert det_float([[1, 0], [2, 0]]).is_zero

    def test_far_below_underflow(self):
        dim = 64
        result = det_float(np.eye(dim) * 1e-10)
        assert result.log_magnitude == pytest.approx(dim * math.log(1e-10))
        assert result.to_complex() == 0

    def test_matches_linear_determinant(self, rng):
        m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        assert det_float(m).to_complex() == pytest.approx(np.linalg.det(m), rel=1e-10)

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            det_float(np.ones((2, 3)))

    def test_capacity(self, monkeypatch):
        monkeypatch.setattr('slocc.determinants.FLOAT_MAX_DIM', 2)
        with pytest.raises(CapacityExceeded):
            det_float(np.eye(3))

    @pytest.mark.slow
    @pytest.mark.parametrize("dim", [2, 4, 8, 16, 32, 64])
    def test_agrees_with_exact(self, rng, dim):
        for _ in range(3):
            m = random_matrix(rng, dim)
            exact = LogComplex.from_exact(det_exact(m))
            floating = det_float([[e.to_complex() for e in row] for row in m])
            assert not exact.is_zero
            assert floating.log_magnitude == pytest.approx(exact.log_magnitude, abs=1e-9)
            assert abs(wrap_phase(floating.phase - exact.phase)) <= 1e-9

    def test_hadamard_bound(self, rng):
        m = np.array([[e.to_complex() for e in row] for row in random_matrix(rng, 6)])
        assert det_float(m).log_magnitude <= log_hadamard_bound(m) + 1e-12


class TestLogComplex:

    def test_round_trip(self):
        value = LogComplex.from_complex(-3 + 4j)
        assert value.to_complex() == pytest.approx(-3 + 4j)

    def test_zero(self):
        assert LogComplex.from_complex(0).is_zero
        assert LogComplex.from_exact(ExactScalar(0)).is_zero
        assert LogComplex.zero().to_complex() == 0


class TestEvaluate:
    """Composition of build and determinant."""

    def test_chi1_theta_exact(self, chi1_4):
        value = evaluate(InvariantKind.TYPE_I, chi1_4)
        assert value.degree == 4
        assert value.raw == -1
        assert value.normalized == Fraction(-1, 16)
        assert value.backend is Backend.EXACT
        assert value.log_bound is None

    def test_chi1_theta_float(self, chi1_4):
        value = evaluate(InvariantKind.TYPE_I, chi1_4, Backend.FLOAT)
        assert value.raw.log_magnitude == pytest.approx(0.0, abs=1e-12)
        assert abs(wrap_phase(value.raw.phase - math.pi)) < 1e-12
        assert value.normalized.log_magnitude == pytest.approx(-math.log(16))
        assert not value.vanishes()

    def test_ghz_vanishes_in_both_backends(self):
        state = gen_ghz(4)
        for kind in ALL_KINDS:
            assert evaluate(kind, state).vanishes()
            assert evaluate(kind, state, Backend.FLOAT).vanishes()

    def test_vanishes_without_bound(self):
        value = InvariantValue(InvariantKind.TYPE_I, 4, LogComplex(-50.0, 0.0),
                               LogComplex(-50.0, 0.0), Backend.FLOAT)
        assert not value.vanishes()

    def test_vanishes_relative_to_bound(self):
        value = InvariantValue(InvariantKind.TYPE_I, 4, LogComplex(-30.0, 0.0),
                               LogComplex(-30.0, 0.0), Backend.FLOAT, log_bound=0.0)
        assert value.vanishes()
        assert not value.vanishes(zero_factor=1e-14)

    def test_two_qubit_determinant(self, rng):
        for _ in range(50):
            state = random_state(2, rng)
            a = state.amplitudes
            expected = a[0] * a[3] - a[1] * a[2]
            for kind in ALL_KINDS:
                assert evaluate(kind, state).raw == expected

    def test_gamma_equals_pi_at_four_qubits(self, rng):
        for _ in range(1000):
            state = random_state(4, rng)
            assert (evaluate(InvariantKind.TYPE_III, state).raw
                    == evaluate(InvariantKind.TYPE_II, state).raw)

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_homogeneity(self, rng, n):
        state = random_state(n, rng)
        c = ExactScalar(Fraction(3, 2), Fraction(-1, 3))
        scaled = state.scaled(c)
        degree = 1 << (n // 2)
        for kind in ALL_KINDS:
            assert evaluate(kind, scaled).raw == evaluate(kind, state).raw * c ** degree

    def test_normalization_uses_recorded_norm(self):
        state = make_state(2, [1, 0, 0, 1], norm_squared=Fraction(1, 2))
        assert evaluate(InvariantKind.TYPE_I, state).normalized == 2

    def test_float_state_exact_backend(self):
        state = gen_chi(3, 4).to_float()
        value = evaluate(InvariantKind.TYPE_II, state, Backend.EXACT)
        assert value.raw == -1
