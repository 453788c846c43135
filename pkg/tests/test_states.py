"""Tests for scalars, pure states and the named state families."""
import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from slocc.scalars import (
    ONE,
    ZERO,
    Backend,
    ExactScalar,
    float_scalar,
    format_rational,
    parse_rational,
    wrap_phase,
)
from slocc.states import (
    PureState,
    check_qubit_count,
    gen_chi,
    gen_dicke,
    gen_family,
    gen_ghz,
    gen_w,
    make_state,
    nonzero_count,
    random_state,
)
from slocc.utils.errors import (
    CapacityExceeded,
    DimensionMismatch,
    InvalidExcitation,
    InvalidFamily,
    InvalidQubitCount,
    NonFiniteAmplitude,
    ParseError,
    UnsupportedFamily,
    ZeroState,
)


def values(state):
    return [state.amplitude(i) for i in range(state.dim)]


class TestRationals:
    """parse_rational / format_rational."""

    def test_parse(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-6/8") == Fraction(-3, 4)
        assert parse_rational("5") == Fraction(5)
        assert parse_rational(" 1 / -2 ") == Fraction(-1, 2)

    @pytest.mark.parametrize("text", ["1/0", "abc", "1.5/2", "", "1//2"])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            parse_rational(text)

    def test_format_lowest_terms(self):
        assert format_rational(Fraction(-3, 6)) == "-1/2"
        assert format_rational(Fraction(4)) == "4/1"

    @given(st.fractions())
    def test_format_then_parse(self, value):
        assert parse_rational(format_rational(value)) == value


class TestExactScalar:
    """Gaussian rational arithmetic."""

    def test_multiplication(self):
        assert ExactScalar(1, 2) * ExactScalar(3, -1) == ExactScalar(5, 5)

    def test_division_inverts_multiplication(self):
        a = ExactScalar(Fraction(2, 3), Fraction(-1, 5))
        b = ExactScalar(Fraction(1, 7), 3)
        assert (a * b) / b == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ExactScalar(1) / ExactScalar(0)

    def test_power(self):
        i = ExactScalar(0, 1)
        assert i ** 2 == -1
        assert i ** 4 == 1
        assert ExactScalar(2) ** -2 == Fraction(1, 4)

    def test_abs2_and_conjugate(self):
        z = ExactScalar(Fraction(1, 2), Fraction(-3, 4))
        assert z.abs2() == Fraction(13, 16)
        assert z * z.conjugate() == z.abs2()

    def test_log_abs_far_below_double_range(self):
        tiny = ExactScalar(Fraction(1, 10 ** 400))
        assert tiny.log_abs() == pytest.approx(-400 * math.log(10))

    def test_phase_far_below_double_range(self):
        assert ExactScalar(0, Fraction(1, 10 ** 400)).phase() == pytest.approx(math.pi / 2)
        assert ExactScalar(-1).phase() == pytest.approx(math.pi)

    def test_module_constants(self):
        assert ZERO.is_zero
        assert ONE == 1
        assert ONE * ExactScalar(3, 4) == ExactScalar(3, 4)

    def test_coerce(self):
        assert ExactScalar.coerce("1/2") == Fraction(1, 2)
        assert ExactScalar.coerce(0.5 - 0.25j) == ExactScalar(Fraction(1, 2), Fraction(-1, 4))

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteAmplitude):
            ExactScalar.coerce(float('nan'))
        with pytest.raises(NonFiniteAmplitude):
            float_scalar(complex(float('inf'), 0))

    def test_wrap_phase(self):
        assert wrap_phase(-math.pi) == math.pi
        assert wrap_phase(3 * math.pi) == pytest.approx(math.pi)
        assert wrap_phase(0.5) == pytest.approx(0.5)


class TestMakeState:
    """Validation in make_state / PureState."""

    def test_basis_state(self):
        state = make_state(2, [1, 0, 0, 0])
        assert state.backend is Backend.EXACT
        assert state.support() == (0,)
        assert state.norm_squared == 1

    def test_verbatim_no_normalization(self):
        state = make_state(2, [3, 0, 0, 4])
        assert state.amplitude(3) == 4
        assert state.norm_squared == 25

    def test_float_inferred(self):
        state = make_state(2, [0.5, 0, 0, 0.5])
        assert state.backend is Backend.FLOAT
        assert state.norm_squared == pytest.approx(0.5)

    def test_odd_qubits(self):
        with pytest.raises(InvalidQubitCount):
            make_state(3, [1] + [0] * 7)

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatch):
            make_state(2, [1, 0, 0])

    def test_all_zero(self):
        with pytest.raises(ZeroState):
            make_state(4, [0] * 16)

    def test_nan_amplitude(self):
        with pytest.raises(NonFiniteAmplitude):
            make_state(2, [float('nan'), 0, 0, 1])

    def test_capacity(self):
        with pytest.raises(CapacityExceeded):
            check_qubit_count(22)

    @pytest.mark.parametrize("n", [0, 1, 5, -2, 2.0, True])
    def test_bad_qubit_counts(self, n):
        with pytest.raises(InvalidQubitCount):
            check_qubit_count(n)

    def test_recorded_norm_overrides(self):
        state = make_state(2, [1, 0, 0, 1], norm_squared=Fraction(1, 2))
        assert state.norm_squared == Fraction(1, 2)
        with pytest.raises(ZeroState):
            make_state(2, [1, 0, 0, 1], norm_squared=0)

    def test_generator_amplitudes(self):
        state = make_state(2, (c for c in [1, 0, 0, 1]))
        assert state.backend is Backend.EXACT
        assert state.support() == (0, 3)
        assert state.norm_squared == 2

    def test_float_amplitudes_read_only(self):
        state = random_state(2, 1, Backend.FLOAT)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0

    @given(st.lists(st.integers(-5, 5), min_size=4, max_size=4).filter(any))
    def test_norm_is_sum_of_squares(self, coefficients):
        state = make_state(2, coefficients)
        assert state.norm_squared == sum(c * c for c in coefficients)
        assert make_state(2, values(state)) == state


class TestGenerators:
    """GHZ, W, Dicke and chi families."""

    @pytest.mark.parametrize("n,support", [(2, (0, 3)), (4, (0, 15)), (6, (0, 63))])
    def test_ghz(self, n, support):
        state = gen_ghz(n)
        assert state.support() == support
        assert state.amplitude(0) == state.amplitude(support[1])
        assert state.norm_squared == 2

    @pytest.mark.parametrize("l,n,support", [
        (1, 2, (1, 2)),
        (2, 4, (3, 5, 6, 9, 10, 12)),
        (3, 4, (7, 11, 13, 14)),
    ])
    def test_dicke_support(self, l, n, support):
        assert gen_dicke(l, n).support() == support

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_dicke_counts(self, n):
        for l in range(1, n):
            state = gen_dicke(l, n)
            assert nonzero_count(state) == comb(n, l)
            assert {state.amplitude(i) for i in state.support()} == {ExactScalar(1)}
            assert all(bin(i).count('1') == l for i in state.support())

    def test_w_is_dicke_one(self):
        assert values(gen_w(6)) == values(gen_dicke(1, 6))
        assert gen_w(4).label == 'w'

    @pytest.mark.parametrize("l", [0, 4, -1])
    def test_dicke_excitation_range(self, l):
        with pytest.raises(InvalidExcitation):
            gen_dicke(l, 4)

    @pytest.mark.parametrize("k,support", [
        (1, (0, 5, 10, 15)),
        (3, (0, 3, 12, 15)),
        (7, (0, 6, 9, 15)),
    ])
    def test_chi_four_qubits(self, k, support):
        state = gen_chi(k, 4)
        assert state.support() == support
        signs = [state.amplitude(i) for i in support]
        assert signs == [1, 1, 1, -1]
        assert state.norm_squared == 4

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
    def test_chi_term_counts(self, n):
        for k in range(1, 8):
            if k == 7 and n < 4:
                continue
            state = gen_chi(k, n)
            assert nonzero_count(state) == 2 ** (n // 2), f"chi{k} n={n}"
            assert all(state.amplitude(i).abs2() == 1 for i in state.support())

    def test_chi5_equals_chi3_at_four(self):
        assert values(gen_chi(5, 4)) == values(gen_chi(3, 4))

    def test_chi7_equals_chi5_at_six(self):
        assert values(gen_chi(7, 6)) == values(gen_chi(5, 6))

    def test_chi_errors(self):
        with pytest.raises(InvalidFamily):
            gen_chi(8, 4)
        with pytest.raises(InvalidFamily):
            gen_chi(0, 4)
        with pytest.raises(UnsupportedFamily):
            gen_chi(7, 2)

    def test_gen_family(self):
        assert gen_family('chi3', 4).label == 'chi3'
        assert gen_family('GHZ', 4).support() == (0, 15)
        assert gen_family('dicke', 4, 2).label == 'dicke(2,4)'
        with pytest.raises(InvalidFamily):
            gen_family('dicke', 4)
        with pytest.raises(InvalidFamily):
            gen_family('bell', 4)

    def test_round_trip_through_make_state(self):
        for state in (gen_ghz(4), gen_dicke(2, 6), gen_chi(6, 6)):
            assert make_state(state.n, values(state), state.label) == state


class TestConversions:
    """Backend conversion and random states."""

    def test_float_exact_round_trip_for_integer_states(self):
        state = gen_chi(2, 6)
        back = state.to_float().to_exact()
        assert values(back) == values(state)
        assert back.norm_squared == state.norm_squared

    def test_normalized_amplitudes(self, chi1_4):
        normalized = chi1_4.normalized_amplitudes()
        assert np.sum(np.abs(normalized) ** 2) == pytest.approx(1.0)
        assert normalized[15] == pytest.approx(-0.5)

    def test_scaled(self, chi1_4):
        scaled = chi1_4.scaled(ExactScalar(0, 2))
        assert scaled.amplitude(5) == ExactScalar(0, 2)
        assert scaled.norm_squared == 16

    def test_scaled_keeps_recorded_norm(self):
        state = make_state(2, [1, 0, 0, 1], norm_squared=Fraction(1, 2))
        assert state.scaled(3).norm_squared == Fraction(9, 2)
        assert state.to_float().scaled(2j).norm_squared == pytest.approx(2.0)

    def test_to_exact_keeps_recorded_norm(self):
        state = make_state(2, [1.0, 0.0, 0.0, 1.0], norm_squared=8.0)
        assert state.backend is Backend.FLOAT
        assert state.to_exact().norm_squared == 8

    def test_random_state_deterministic(self):
        assert random_state(4, 11) == random_state(4, 11)
        assert random_state(4, 11) != random_state(4, 12)

    def test_random_real_state(self):
        state = random_state(4, 3, real=True)
        assert all(a.im == 0 for a in state.amplitudes)

    def test_random_float_state(self):
        state = random_state(6, 5, Backend.FLOAT)
        assert state.backend is Backend.FLOAT
        assert state.amplitudes.dtype == np.complex128
        assert np.all(np.abs(state.amplitudes.real) <= 1)
