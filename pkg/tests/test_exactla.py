import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arperfect import exactla as la
from arperfect.errors import CharacteristicMismatch, DimensionMismatch

PRIMES = [2, 3, 5, 7, 2**31 - 1]


@st.composite
def matrices(draw, max_rows=6, max_cols=6, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(entries, dtype=np.int64).reshape(r, c), p


def test_rref_identity():
    rank, red, piv = la.rref(la.identity(2), 2)
    assert rank == 2 and piv == [0, 1]
    assert np.array_equal(red, la.identity(2))


def test_rref_zero():
    rank, _, piv = la.rref(la.zeros(3, 2), 3)
    assert rank == 0 and piv == []


def test_rref_dependent_rows_f5():
    rank, red, piv = la.rref([[1, 2], [2, 4]], 5)
    assert rank == 1 and piv == [0]
    assert red[0].tolist() == [1, 2]


def test_kernel_of_identity_is_empty():
    assert la.kernel_basis(la.identity(4), 7).shape == (0, 4)


def test_kernel_of_zero_is_everything():
    assert la.kernel_basis(la.zeros(2, 3), 2).shape[0] == 3


def test_kernel_of_multiplication_by_x():
    # columns are the images of 1, x, x^2 in F_2[X]/(X^3)
    mult_x = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    ker = la.kernel_basis(mult_x, 2)
    assert ker.tolist() == [[0, 0, 1]]


def test_solve_examples():
    b = np.array([[3], [4]])
    assert np.array_equal(la.solve(la.identity(2), b, 5), b)
    assert la.solve(la.zeros(2, 2), np.array([1, 0]), 3) is None
    x = la.solve([[1, 1], [0, 1]], [[0], [1]], 2)
    assert x.tolist() == [[1], [1]]


def test_solve_rejects_mismatched_rows():
    with pytest.raises(DimensionMismatch):
        la.solve(la.identity(2), np.zeros(3, dtype=np.int64), 5)


def test_check_prime():
    assert la.check_prime(2**31 - 1) == 2**31 - 1
    for bad in (1, 4, 2**31):
        with pytest.raises(CharacteristicMismatch):
            la.check_prime(bad)


def test_large_prime_products_are_exact():
    p = 2**31 - 1
    a = np.full((40, 40), p - 1, dtype=np.int64)
    prod = la.matmul(a, a, p)
    # (-1)(-1) summed 40 times
    assert (prod == 40).all()


def test_inverse_and_singular():
    a = np.array([[2, 1], [1, 1]])
    inv = la.inverse(a, 7)
    assert np.array_equal(la.matmul(a, inv, 7), la.identity(2))
    with pytest.raises(ZeroDivisionError):
        la.inverse([[1, 2], [2, 4]], 5)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(mp):
    m, p = mp
    assert la.rank(m, p) + la.kernel_basis(m, p).shape[0] == m.shape[1]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_rows_are_annihilated(mp):
    m, p = mp
    for row in la.kernel_basis(m, p):
        assert not la.matmul(m, row.reshape(-1, 1), p).any()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent(mp):
    m, p = mp
    _, red, piv = la.rref(m, p)
    _, red2, piv2 = la.rref(red, p)
    assert np.array_equal(red, red2) and piv == piv2


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 2**16))
def test_solve_is_exact(mp, seed):
    a, p = mp
    rng = np.random.default_rng(seed)
    x0 = rng.integers(0, p, size=(a.shape[1], 2))
    b = la.matmul(a, x0, p)
    x = la.solve(a, b, p)
    assert x is not None
    assert np.array_equal(la.matmul(a, x, p), b)


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=5, max_cols=5, primes=[2, 3, 5]))
def test_solve_none_means_inconsistent(mp):
    a, p = mp
    b = np.ones(a.shape[0], dtype=np.int64)
    x = la.solve(a, b, p)
    if x is None:
        # b lies outside the column space
        assert not la.in_span(b, a, p)
    else:
        assert np.array_equal(la.matmul(a, x.reshape(-1, 1), p)[:, 0], b % p)
