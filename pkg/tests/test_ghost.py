import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from ghostosd.ghost import (
    Apex, StepError, apex_holds, dense_update, diagonal_step_2m, ghost_power, ghost_state, ghost_sweep,
    initial_state, periodic_diagonal_step, step, three_term_update, two_term_update, windowed_update,
)
from ghostosd.decomposition import scalar_diag
from ghostosd.honest import build_honest, random_honest, window
from ghostosd.semiring import EPS, WorkCounter, mat_add, mat_mul, mat_power_naive, naive_sweep

from conftest import ref_honest, ref_power, to_lists


def _state_at(H, k, **kw):
    return ghost_state(H, k, **kw)


def test_two_term_update_a1(a1):
    assert two_term_update(a1.dense, a1).row(1) == (EPS, -2, 0, 2, EPS)


@given(st.integers(2, 6), st.integers(0, 10**6))
def test_two_term_update_is_right_multiplication(m, seed):
    H = random_honest(m, seed)
    X = mat_power_naive(H.dense, 3)
    assert two_term_update(X, H) == mat_mul(X, H.dense)


def test_two_term_dimension_mismatch(a1):
    with pytest.raises(ValueError):
        two_term_update(random_honest(3, 0).dense, a1)


def test_windowed_update_a1(a1):
    w = WorkCounter()
    st1 = windowed_update(initial_state(a1), w)
    assert st1.k == 1
    assert st1.X.row(1) == (EPS, -2, 0, 2, EPS)
    assert w.two_term == 3 * 5


def test_windowed_out_of_regime(a1):
    st1 = windowed_update(initial_state(a1))
    with pytest.raises(StepError):
        windowed_update(st1)


def test_diagonal_step_a1(a1):
    s = _state_at(a1, 4)
    assert s.X.diagonal() == (5,) * 5
    assert s.apex is Apex.HOLDS
    assert s.X.entry(1, 2) == mat_power_naive(a1.dense, 5).entry(1, 2) == -3
    assert apex_holds(s.X, 5)


def test_heavy_constant_band():
    H = build_honest(2, [50] * 5, [-1] * 5)
    assert _state_at(H, 4).X.diagonal() == (250,) * 5


def test_periodic_step_a1(a1):
    assert ghost_power(a1, 9).diagonal() == (10,) * 5
    assert ghost_power(a1, 14).diagonal() == (15,) * 5
    assert _state_at(a1, 14).shortcut_hits == 3


def test_ghost_power_zero_is_a(a1):
    assert ghost_power(a1, 0) == a1.dense
    with pytest.raises(ValueError):
        ghost_power(a1, -1)
    with pytest.raises(ValueError):
        ghost_power(a1, 10, alpha_max=2)


def test_step_guards(a1):
    s = _state_at(a1, 2)
    with pytest.raises(StepError):
        diagonal_step_2m(s)
    with pytest.raises(StepError):
        periodic_diagonal_step(s, 2)
    s8 = dataclasses.replace(_state_at(a1, 8), apex=Apex.UNKNOWN)
    with pytest.raises(StepError):
        periodic_diagonal_step(s8, 2)
    with pytest.raises(StepError):
        periodic_diagonal_step(s8, 1)


def _apex_failing(m):
    for seed in range(200):
        H = random_honest(m, seed)
        s = _state_at(H, 2 * m)
        if s.apex is Apex.FAILS:
            return H
    raise AssertionError("no apex-failing seed found")


def test_apex_fails_path_is_plain_two_term():
    H = _apex_failing(3)
    s = _state_at(H, 2 * H.N - 2)
    out = periodic_diagonal_step(s, 2)
    assert out.X == two_term_update(s.X, H)
    assert out.shortcut_hits == s.shortcut_hits


def test_apex_tracks_top_law():
    for seed in range(20):
        H = random_honest(4, seed)
        s = _state_at(H, 8)
        oracle = mat_power_naive(H.dense, 9)
        expected = all(v <= s.L for v in oracle.values[oracle.finite].tolist())
        assert (s.apex is Apex.HOLDS) == expected


def test_apex_holds_for_constant_a():
    for m in range(2, 8):
        H = build_honest(m, [7] * (2 * m + 1), [-(j % 5) - 1 for j in range(2 * m + 1)])
        assert _state_at(H, 2 * m).apex is Apex.HOLDS


def test_verify_mode_flags_a_wrong_shortcut(a1):
    s = _state_at(a1, 2 * a1.m - 1, verify=True)
    out = diagonal_step_2m(dataclasses.replace(s, L=s.L + 1))
    assert out.X.diagonal() == (6,) * 5
    assert len(out.findings) == 1
    assert "diagonal shortcut wrote 6" in out.findings[0]
    quiet = diagonal_step_2m(dataclasses.replace(s, L=s.L + 1, verify=False))
    assert quiet.findings == ()


def test_verify_mode_clean_on_valid_runs():
    for seed in range(10):
        s = _state_at(random_honest(4, seed), 3 * 9 - 1, verify=True)
        assert s.findings == ()


@pytest.mark.parametrize("m", [2, 3, 5, 8])
def test_work_counts(m):
    H = random_honest(m, 0)
    N = H.N
    state = initial_state(H)
    for target in range(1, 3 * N):
        w = WorkCounter()
        state = step(state, w)
        if target <= m - 1:
            assert w.two_term == (target + 2) * N
        elif target == 2 * m or (target + 1) % N == 0 and state.apex is Apex.HOLDS:
            assert (w.two_term, w.assigned) == (N * N - N, N)
        else:
            assert w.two_term == N * N
        assert w.n_term == 0
    w = WorkCounter()
    mat_mul(H.dense, H.dense, w)
    assert w.n_term == N * N


@settings(max_examples=30)
@given(st.integers(2, 7), st.integers(0, 2**32))
def test_sweep_matches_oracle(m, seed):
    H = random_honest(m, seed)
    N = H.N
    for s, X in zip(ghost_sweep(H, 3 * N - 1, verify=True), naive_sweep(H.dense, 3 * N)):
        assert s.X == X
        assert not s.findings


def test_sweep_matches_pure_python_reference():
    H = random_honest(3, 11)
    A = ref_honest(list(H.a), list(H.b))
    for s in ghost_sweep(H, 14):
        assert to_lists(s.X) == ref_power(A, s.k + 1)


@pytest.mark.parametrize("m", range(2, 6))
def test_window_entries_are_eps_without_evaluation(m):
    H = random_honest(m, 1)
    for s in ghost_sweep(H, m - 1):
        if s.k >= 1:
            assert (s.X.finite == window(H, s.k).pattern()).all()


def test_dense_update_advances(a1):
    s = _state_at(a1, 5)
    assert dense_update(s).X == mat_power_naive(a1.dense, 7)


def test_three_term_update_example(a1):
    D = mat_add(scalar_diag(5, 2), a1.dense)
    assert three_term_update(D, D).entry(1, 1) == 4
    assert three_term_update(D, D) == mat_mul(D, D)
    w = WorkCounter()
    three_term_update(D, D, w)
    assert w.three_term == 25
