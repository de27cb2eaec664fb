import numpy as np
import pytest
from hypothesis import given, strategies as st

from ghostosd.semiring import (
    EPS, FormatError, MaxPlusMatrix, WorkCounter, epsilon_matrix, format_matrix, mat_add, mat_mul,
    mat_power_naive, mp_add, mp_mul, naive_sweep, parse_matrix, scalar_shift, support, vec_mul,
)

from conftest import from_lists, ref_mul, ref_power, to_lists

scalars = st.one_of(st.just(EPS), st.integers(-10**6, 10**6))


@st.composite
def matrices(draw, n=None):
    n = draw(st.integers(1, 6)) if n is None else n
    cell = st.one_of(st.none(), st.integers(-100, 100))
    return from_lists([[draw(cell) for _ in range(n)] for _ in range(n)])


@st.composite
def triples(draw):
    n = draw(st.integers(1, 5))
    return draw(matrices(n)), draw(matrices(n)), draw(matrices(n))


@given(scalars, scalars, scalars)
def test_scalar_laws(x, y, z):
    assert mp_add(x, y) == mp_add(y, x)
    assert mp_add(x, x) == x
    assert mp_add(mp_add(x, y), z) == mp_add(x, mp_add(y, z))
    assert mp_mul(x, y) == mp_mul(y, x)
    assert mp_mul(mp_mul(x, y), z) == mp_mul(x, mp_mul(y, z))
    assert mp_mul(x, mp_add(y, z)) == mp_add(mp_mul(x, y), mp_mul(x, z))


@given(scalars)
def test_identities(x):
    assert mp_add(x, EPS) == x
    assert mp_mul(x, 0) == x
    assert mp_mul(x, EPS) is EPS


def test_eps_is_singleton_and_bottom():
    import pickle
    assert pickle.loads(pickle.dumps(EPS)) is EPS
    assert EPS < -10**18 and not EPS > 0
    assert str(EPS) == "-inf"


def test_overflow_is_reported():
    with pytest.raises(OverflowError):
        mp_mul(2**62, 2**62)
    with pytest.raises(OverflowError):
        MaxPlusMatrix.from_rows([[2**63]])


@given(triples())
def test_mat_mul_matches_reference_and_is_associative(t):
    P, Q, R = t
    assert to_lists(mat_mul(P, Q)) == ref_mul(to_lists(P), to_lists(Q))
    assert mat_mul(mat_mul(P, Q), R) == mat_mul(P, mat_mul(Q, R))


@given(matrices(), st.integers(1, 4), st.integers(1, 4))
def test_power_additivity(M, p, q):
    assert mat_mul(mat_power_naive(M, p), mat_power_naive(M, q)) == mat_power_naive(M, p + q)
    assert to_lists(mat_power_naive(M, p)) == ref_power(to_lists(M), p)


@given(matrices(), st.integers(-1000, 1000))
def test_scalar_shift_and_epsilon(M, c):
    E = epsilon_matrix(M.n)
    assert mat_mul(M, E) == E
    assert mat_add(M, E) == M
    shifted = scalar_shift(M, c)
    assert np.array_equal(shifted.finite, M.finite)


@given(matrices())
def test_round_trip(M):
    assert parse_matrix(format_matrix(M)) == M


def test_format_layout():
    M = MaxPlusMatrix.from_rows([[1, EPS], [-2, 0]])
    assert format_matrix(M) == "maxplus v1\nn 2\n1 -inf\n-2 0\n"


@pytest.mark.parametrize("text", [
    "",
    "maxplus v2\nn 1\n0\n",
    "maxplus v1\nm 1\n0\n",
    "maxplus v1\nn 2\n0 0\n",
    "maxplus v1\nn 1\nfoo\n",
    "maxplus v1\nn 1\n0 1\n",
])
def test_parse_rejects(text):
    with pytest.raises(FormatError):
        parse_matrix(text)


def test_support_example():
    B = MaxPlusMatrix.from_rows([[3, EPS, 4], [EPS, 1, -2], [EPS, EPS, EPS]])
    assert support(B) == 2
    assert mat_mul(B, B).entry(1, 1) == 6


def test_entry_is_one_based():
    M = MaxPlusMatrix.from_rows([[1, 2], [3, EPS]])
    assert M.entry(1, 2) == 2
    assert M.entry(2, 2) is EPS
    assert M.column(1) == (1, 3)
    assert M.diagonal() == (1, EPS)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        mat_mul(epsilon_matrix(2), epsilon_matrix(3))
    with pytest.raises(ValueError):
        mat_power_naive(epsilon_matrix(2), 0)


def test_work_counter_counts_n_term_entries():
    w = WorkCounter()
    mat_power_naive(epsilon_matrix(4), 3, w)
    assert w.n_term == 2 * 16


@given(matrices(4), st.lists(st.one_of(st.just(EPS), st.integers(-50, 50)), min_size=4, max_size=4))
def test_vec_mul_is_a_row_of_the_product(M, u):
    U = MaxPlusMatrix.from_rows([u] + [[EPS] * 4] * 3)
    assert vec_mul(u, M) == mat_mul(U, M).row(1)


def test_naive_sweep_yields_every_power():
    M = from_lists([[None, 1], [2, None]])
    assert [X.entry(1, 1) for X in naive_sweep(M, 4)] == [EPS, 3, EPS, 6]
