"""Integer lattice kit plus density certificates.

The worked examples here were derived by hand: annihilators of small
antisymmetric exponent matrices, and density or its failure for subgroups
of low-dimensional tori generated by symbolic irrationals.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktwist.lattices import (
    LatticeBasis,
    annihilator_lattice,
    hnf,
    integral_pairing_lattice,
    kernel,
    kronecker_dense,
    verify_kronecker,
    xgcd,
)
from ktwist.phases import PhaseExponent, pair_int

Z = PhaseExponent.of
half = Fraction(1, 2)


# --- annihilator examples ---------------------------------------------------


def test_annihilator_symbolic_theta_is_trivial():
    # [[0, -theta], [theta, 0]]: no nonzero integer vector can clear a free symbol
    A = (
        (Z(0), Z(0, theta=-1)),
        (Z(0, theta=1), Z(0)),
    )
    lat = annihilator_lattice(A, 2)
    assert lat.is_trivial()
    assert lat.rank == 0


def test_annihilator_half_gives_index_four_sublattice():
    # [[0, -1/2], [1/2, 0]]: clearing 1/2 needs even entries in both slots
    A = (
        (Z(0), Z(-half)),
        (Z(half), Z(0)),
    )
    lat = annihilator_lattice(A, 2)
    assert lat.rank == 2
    assert lat.member((2, 0))
    assert lat.member((0, 2))
    assert not lat.member((1, 0))
    assert not lat.member((0, 1))
    assert lat.rows == ((2, 0), (0, 2))


def test_annihilator_zero_matrix_is_everything():
    A = tuple(tuple(Z(0) for _ in range(3)) for _ in range(3))
    lat = annihilator_lattice(A, 3)
    assert lat.rank == 3
    assert lat.member((1, 0, 0)) and lat.member((0, 1, 0)) and lat.member((0, 0, 1))


def test_annihilator_rejects_non_antisymmetric():
    A = (
        (Z(0), Z(0, theta=1)),
        (Z(0, theta=1), Z(0)),
    )
    with pytest.raises(ValueError):
        annihilator_lattice(A, 2)


# --- kronecker density examples ---------------------------------------------


def test_kronecker_single_irrational_is_dense():
    gens = [(Z(0, theta=1),)]
    res = kronecker_dense(gens, 1)
    assert res.dense
    assert res.certificate["kind"] == "irrational_full_rank"
    assert verify_kronecker(gens, 1, res)


def test_kronecker_half_is_not_dense():
    gens = [(Z(half),)]
    res = kronecker_dense(gens, 1)
    assert not res.dense
    assert res.certificate["kind"] == "annihilator_vector"
    assert res.certificate["n"] == [2]
    assert verify_kronecker(gens, 1, res)


def test_kronecker_colinear_pair_is_not_dense():
    # (theta, 2theta) is annihilated by (2, -1)
    gens = [(Z(0, theta=1), Z(0, theta=2))]
    res = kronecker_dense(gens, 2)
    assert not res.dense
    n = res.certificate["n"]
    assert n == [2, -1] or n == [-2, 1]
    assert verify_kronecker(gens, 2, res)


def test_kronecker_rationally_independent_pair_dense_in_t2():
    gens = [(Z(0, theta=1), Z(0)), (Z(0), Z(0, rho=1))]
    res = kronecker_dense(gens, 2)
    assert res.dense
    assert verify_kronecker(gens, 2, res)


def _random_phase(rng, symbols):
    p = Z(Fraction(rng.randrange(-4, 5), rng.choice([1, 2, 3, 4])))
    for s in symbols:
        if rng.random() < 0.5:
            p = p + PhaseExponent.of(0, **{s: Fraction(rng.randrange(-3, 4))})
    return p


def test_kronecker_certificates_recheck_randomized():
    # every produced certificate must survive its independent recheck
    rng = random.Random(20260822)
    rounds = 0
    dense_seen = 0
    for _ in range(200):
        d = rng.randrange(1, 4)
        gens = [
            tuple(_random_phase(rng, ("theta", "rho")) for _ in range(d))
            for _ in range(rng.randrange(1, 4))
        ]
        res = kronecker_dense(gens, d)
        assert verify_kronecker(gens, d, res)
        dense_seen += 1 if res.dense else 0
        rounds += 1
    assert rounds == 200
    assert 0 < dense_seen < 200  # the sampler hits both outcomes


# --- integral pairing -------------------------------------------------------


def test_integral_pairing_mixed_example():
    # pairing (n1, n2) with (theta, 1/2): need n1 = 0 and n2 even
    gens = [(Z(0, theta=1), Z(half))]
    lat = integral_pairing_lattice(gens, 2)
    assert lat.member((0, 2))
    assert not lat.member((0, 1))
    assert not lat.member((1, 0))


# --- raw integer routines ---------------------------------------------------


def test_xgcd_examples():
    g, x, y = xgcd(12, 18)
    assert g == 6 and 12 * x + 18 * y == 6
    g, x, y = xgcd(0, 0)
    assert g == 0


def test_hnf_simple():
    rows = hnf([(2, 0), (0, 2), (1, 1)])
    basis = LatticeBasis.from_rows([(2, 0), (0, 2), (1, 1)], 2)
    assert basis.member((1, 1))
    assert basis.member((2, 0))
    assert not basis.member((1, 0))
    assert rows == tuple(basis.rows)


def test_kernel_is_left_kernel():
    # rows x of x . M = 0 for M = [[1, 2], [2, 4]]
    rows = kernel([(1, 2), (2, 4)], 2)
    assert len(rows) == 1
    x = rows[0]
    assert x[0] * 1 + x[1] * 2 == 0
    assert x[0] * 2 + x[1] * 4 == 0


small_int = st.integers(min_value=-9, max_value=9)


@st.composite
def int_rows(draw):
    dim = draw(st.integers(min_value=1, max_value=4))
    n = draw(st.integers(min_value=1, max_value=4))
    return [tuple(draw(small_int) for _ in range(dim)) for _ in range(n)], dim


@settings(max_examples=60)
@given(int_rows())
def test_hnf_canonical_and_membership(data):
    rows, dim = data
    basis = LatticeBasis.from_rows(rows, dim)
    # every generator is a member of the lattice it generates
    for r in rows:
        assert basis.member(r)
    # canonical: rebuilding from the basis rows changes nothing
    assert LatticeBasis.from_rows(list(basis.rows), dim).rows == basis.rows


@settings(max_examples=60)
@given(int_rows())
def test_kernel_rows_annihilate(data):
    rows, dim = data
    ker = kernel(rows, dim)
    for x in ker:
        for j in range(dim):
            assert sum(x[i] * rows[i][j] for i in range(len(rows))) == 0


@settings(max_examples=60)
@given(int_rows(), int_rows())
def test_membership_respects_addition(a, b):
    rows, dim = a
    basis = LatticeBasis.from_rows(rows, dim)
    if len(basis.rows) >= 2:
        r1, r2 = basis.rows[0], basis.rows[1]
        assert basis.member(tuple(x + y for x, y in zip(r1, r2)))
        assert basis.member(tuple(-x for x in r1))
