"""Exponent arithmetic over Q plus declared symbols, and the literal grammar."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktwist.phases import (
    PhaseExponent,
    PhaseSyntaxError,
    format_phase,
    pair_int,
    parse_phase,
    phase_is_trivial,
    vec_add,
    vec_sub,
    zero_vector,
)


def test_literal_with_declared_symbol():
    # grammar example from the file-format contract
    p = parse_phase("1/3 + 2*theta", symbols=["theta"])
    assert p.rat == Fraction(1, 3)
    assert p.coeff("theta") == 2


def test_plain_rational_literal():
    # the rational part lives mod 1, so -5/7 lands on 2/7 and integers on 0
    assert parse_phase("-5/7").rat == Fraction(2, 7)
    assert parse_phase("3").rat == 0


def test_undeclared_symbol_rejected():
    with pytest.raises(PhaseSyntaxError):
        parse_phase("1/2 + 1*rho", symbols=["theta"])


def test_garbage_rejected():
    for bad in ("", "theta", "1 +", "1 + theta"):
        with pytest.raises(PhaseSyntaxError):
            parse_phase(bad, symbols=["theta"])
    with pytest.raises((PhaseSyntaxError, ZeroDivisionError)):
        parse_phase("1/0")


def test_format_round_trip_on_examples():
    for text in ("0", "1/3 + 2*theta", "-1/2", "2 + -3/4*theta + 1*rho"):
        p = parse_phase(text, symbols=["theta", "rho"])
        again = parse_phase(format_phase(p), symbols=["theta", "rho"])
        assert again == p


def test_arithmetic():
    a = PhaseExponent.of(Fraction(1, 2), theta=1)
    b = PhaseExponent.of(Fraction(1, 2), theta=-1)
    assert (a + b).rat == 0  # 1/2 + 1/2 winds around
    assert (a + b).coeff("theta") == 0
    assert phase_is_trivial(a - a)
    assert (-a).coeff("theta") == -1


def test_triviality_is_mod_one_on_the_rational_part():
    # integer rational part with no symbol content winds to the trivial phase
    assert phase_is_trivial(PhaseExponent.of(3))
    assert not phase_is_trivial(PhaseExponent.of(Fraction(1, 2)))
    assert not phase_is_trivial(PhaseExponent.of(0, theta=1))


def test_pair_int():
    v = (PhaseExponent.of(0, theta=1), PhaseExponent.of(Fraction(1, 4)))
    got = pair_int((2, 4), v)
    assert got.coeff("theta") == 2
    assert got.rat == 0  # 4 * 1/4 is a whole turn


def test_vector_helpers():
    v = (PhaseExponent.of(1), PhaseExponent.of(0, theta=1))
    z = zero_vector(2)
    assert vec_add(v, z) == v
    assert vec_sub(v, v) == z or all((x - y).rat == 0 for x, y in zip(vec_sub(v, v), z))


frac = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@given(frac, frac, st.integers(min_value=-5, max_value=5), st.integers(min_value=-5, max_value=5))
def test_addition_componentwise(r1, r2, c1, c2):
    a = PhaseExponent.of(r1, theta=c1)
    b = PhaseExponent.of(r2, theta=c2)
    s = a + b
    assert s.rat == (r1 + r2) % 1
    assert s.coeff("theta") == c1 + c2


@given(frac, st.integers(min_value=-5, max_value=5), st.integers(min_value=-4, max_value=4))
def test_scaling_matches_repeated_addition(r, c, m):
    a = PhaseExponent.of(r, theta=c)
    total = PhaseExponent.of(0)
    for _ in range(abs(m)):
        total = total + a if m > 0 else total - a
    assert a.scaled(m) == total


@given(frac, st.integers(min_value=-5, max_value=5))
def test_format_parse_round_trip(r, c):
    p = PhaseExponent.of(r, theta=c)
    assert parse_phase(format_phase(p), symbols=["theta"]) == p
