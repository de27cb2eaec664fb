"""Ghost-OSD fast powers X(k) = A^(k+1) of an honest matrix.

Every column of an honest A has exactly two finite rows, j+1 and j+2, so

    X(k)[i, j] = max(X(k-1)[i, j+1] + a_j,  X(k-1)[i, j+2] + b_j)

(column indices cyclic).  On top of that two-term rule the sweep

* evaluates only the predicted window of X(k) for 1 <= k <= m-1 and leaves
  the rest EPS without looking at it,
* writes the diagonal of X(2m) as the top cycle weight L directly,
* writes the diagonal of X(alpha*(2m+1) - 1) as alpha*L directly when X(2m)
  has the apex property (no entry above L), and falls back to the plain
  two-term rule otherwise.
"""
from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .honest import HonestMatrix, top_cycle_weight, window
from .semiring import MaxPlusMatrix, WorkCounter, _same_order


class StepError(ValueError):
    """A step function was called outside the regime it is valid for."""


class Apex(enum.Enum):
    UNKNOWN = "unknown"
    HOLDS = "holds"
    FAILS = "fails"


@dataclass(frozen=True)
class GhostState:
    H: HonestMatrix
    k: int
    X: MaxPlusMatrix
    L: int
    apex: Apex = Apex.UNKNOWN
    shortcut_hits: int = 0
    findings: tuple[str, ...] = ()
    verify: bool = False


def initial_state(H: HonestMatrix, verify: bool = False) -> GhostState:
    return GhostState(H=H, k=0, X=H.dense, L=top_cycle_weight(H), verify=verify)


def _combine(v1, f1, v2, f2):
    fin = f1 | f2
    vals = np.where(f1 & f2, np.maximum(v1, v2), np.where(f1, v1, v2))
    return np.where(fin, vals, 0), fin


def _two_term_at(X: MaxPlusMatrix, H: HonestMatrix, rows: np.ndarray, cols: np.ndarray):
    """Two-term rule evaluated only at the given 0-based (row, col) positions."""
    N = H.N
    c1 = (cols + 1) % N
    c2 = (cols + 2) % N
    return _combine(
        X.values[rows, c1] + H.a_arr[cols], X.finite[rows, c1],
        X.values[rows, c2] + H.b_arr[cols], X.finite[rows, c2],
    )


def two_term_update(X: MaxPlusMatrix, H: HonestMatrix, work: WorkCounter | None = None) -> MaxPlusMatrix:
    """X (x) A for honest A, using only the two finite rows of each column."""
    if X.n != H.N:
        raise ValueError(f"dimension mismatch: {X.n} vs {H.N}")
    v1 = np.roll(X.values, -1, axis=1) + H.a_arr[None, :]
    f1 = np.roll(X.finite, -1, axis=1)
    v2 = np.roll(X.values, -2, axis=1) + H.b_arr[None, :]
    f2 = np.roll(X.finite, -2, axis=1)
    vals, fin = _combine(v1, f1, v2, f2)
    if work is not None:
        work.two_term += X.n * X.n
    return MaxPlusMatrix(vals, fin)


def windowed_update(state: GhostState, work: WorkCounter | None = None) -> GhostState:
    """Produce X(k+1) for k+1 <= m-1, touching only the k+3 window entries per row."""
    H = state.H
    target = state.k + 1
    if not 1 <= target <= H.m - 1:
        raise StepError(f"windowed regime is 1 <= k <= {H.m - 1}; cannot produce X({target})")
    N = H.N
    offs = np.array(window(H, target).offsets)
    rows = np.repeat(np.arange(N), len(offs))
    cols = (rows + np.tile(offs, N)) % N
    vals, fin = _two_term_at(state.X, H, rows, cols)
    values = np.zeros((N, N), dtype=np.int64)
    finite = np.zeros((N, N), dtype=bool)
    values[rows, cols] = vals
    finite[rows, cols] = fin
    if work is not None:
        work.two_term += len(rows)
    return dataclasses.replace(state, k=target, X=MaxPlusMatrix(values, finite))


def dense_update(state: GhostState, work: WorkCounter | None = None) -> GhostState:
    return dataclasses.replace(state, k=state.k + 1, X=two_term_update(state.X, state.H, work))


def _diagonal_shortcut(state: GhostState, diag_value: int, work: WorkCounter | None):
    H = state.H
    N = H.N
    rows, cols = np.nonzero(~np.eye(N, dtype=bool))
    vals, fin = _two_term_at(state.X, H, rows, cols)
    values = np.zeros((N, N), dtype=np.int64)
    finite = np.zeros((N, N), dtype=bool)
    values[rows, cols] = vals
    finite[rows, cols] = fin
    diag = np.arange(N)
    values[diag, diag] = diag_value
    finite[diag, diag] = True
    if work is not None:
        work.two_term += len(rows)
        work.assigned += N
    findings = state.findings
    if state.verify:
        dv, df = _two_term_at(state.X, H, diag, diag)
        bad = np.nonzero(~df | (dv != diag_value))[0]
        if len(bad):
            i = int(bad[0])
            got = int(dv[i]) if df[i] else "-inf"
            findings = findings + (
                f"X({state.k + 1}) diagonal shortcut wrote {diag_value} "
                f"but the two-term rule gives {got} at ({i + 1}, {i + 1})",
            )
    return MaxPlusMatrix(values, finite), findings


def apex_holds(X2m: MaxPlusMatrix, L: int) -> bool:
    """True iff no finite entry exceeds L."""
    return bool((X2m.values[X2m.finite] <= L).all())


def diagonal_step_2m(state: GhostState, work: WorkCounter | None = None) -> GhostState:
    """Produce X(2m): diagonal is L, off-diagonal by the two-term rule; record apex."""
    m = state.H.m
    if state.k != 2 * m - 1:
        raise StepError(f"X(2m) step needs k = {2 * m - 1}, state is at k = {state.k}")
    X, findings = _diagonal_shortcut(state, state.L, work)
    apex = Apex.HOLDS if apex_holds(X, state.L) else Apex.FAILS
    return dataclasses.replace(
        state, k=state.k + 1, X=X, apex=apex,
        shortcut_hits=state.shortcut_hits + 1, findings=findings,
    )


def periodic_diagonal_step(state: GhostState, alpha: int, work: WorkCounter | None = None) -> GhostState:
    """Produce X(alpha*(2m+1) - 1), alpha > 1.

    With the apex property the diagonal is alpha*L by assignment; without it
    this is an ordinary two-term step.
    """
    N = state.H.N
    if alpha < 2:
        raise StepError(f"alpha must be > 1, got {alpha}")
    if state.k != alpha * N - 2:
        raise StepError(f"periodic step for alpha={alpha} needs k = {alpha * N - 2}, state is at k = {state.k}")
    if state.apex is Apex.UNKNOWN:
        raise StepError("apex property unknown; X(2m) has not been produced by this sweep")
    if state.apex is Apex.FAILS:
        return dense_update(state, work)
    X, findings = _diagonal_shortcut(state, alpha * state.L, work)
    return dataclasses.replace(
        state, k=state.k + 1, X=X, shortcut_hits=state.shortcut_hits + 1, findings=findings,
    )


def step(state: GhostState, work: WorkCounter | None = None) -> GhostState:
    """Advance X(k) -> X(k+1) with whichever rule applies at k+1."""
    m, N = state.H.m, state.H.N
    target = state.k + 1
    if target <= m - 1:
        return windowed_update(state, work)
    if target == 2 * m:
        return diagonal_step_2m(state, work)
    if (target + 1) % N == 0:
        return periodic_diagonal_step(state, (target + 1) // N, work)
    return dense_update(state, work)


def ghost_sweep(
    H: HonestMatrix,
    k_max: int | None = None,
    *,
    verify: bool = False,
    work: WorkCounter | None = None,
) -> Iterator[GhostState]:
    """Yield the states holding X(0), X(1), ... up to X(k_max) (unbounded if None)."""
    state = initial_state(H, verify)
    yield state
    while k_max is None or state.k < k_max:
        state = step(state, work)
        yield state


def ghost_state(H: HonestMatrix, k: int, *, verify: bool = False, work: WorkCounter | None = None) -> GhostState:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    for state in ghost_sweep(H, k, verify=verify, work=work):
        pass
    return state


def ghost_power(
    H: HonestMatrix,
    k: int,
    alpha_max: int | None = None,
    *,
    verify: bool = False,
    work: WorkCounter | None = None,
) -> MaxPlusMatrix:
    """X(k) = A^(k+1), replayed from X(0)."""
    if alpha_max is not None and k >= alpha_max * H.N:
        raise ValueError(f"k = {k} is beyond alpha_max * (2m+1) - 1 = {alpha_max * H.N - 1}")
    return ghost_state(H, k, verify=verify, work=work).X


def three_term_update(Z: MaxPlusMatrix, D: MaxPlusMatrix, work: WorkCounter | None = None) -> MaxPlusMatrix:
    """Z (x) D for D finite only on its diagonal and the two honest bands."""
    n = _same_order(Z, D)
    cols = np.arange(n)
    c1 = (cols + 1) % n
    c2 = (cols + 2) % n
    terms = [
        (Z.values + D.values[cols, cols][None, :], Z.finite & D.finite[cols, cols][None, :]),
        (Z.values[:, c1] + D.values[c1, cols][None, :], Z.finite[:, c1] & D.finite[c1, cols][None, :]),
        (Z.values[:, c2] + D.values[c2, cols][None, :], Z.finite[:, c2] & D.finite[c2, cols][None, :]),
    ]
    vals, fin = terms[0]
    for v, f in terms[1:]:
        vals, fin = _combine(vals, fin, v, f)
    if work is not None:
        work.three_term += n * n
    return MaxPlusMatrix(vals, fin)
