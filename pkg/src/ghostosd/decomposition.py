"""Powers of D = B (+) A where B is a scalar diagonal and A is honest.

Because a scalar diagonal commutes with everything, B^(n-k) (x) A^k is just
A^k with (n-k)*b added to every finite entry, and

    D^n = B^n (+) [ (+)_{k=1}^{n-1} shift(A^k, (n-k) b) ] (+) A^n.
"""
from __future__ import annotations

from typing import Iterator

import numpy as np

from .ghost import ghost_sweep, three_term_update
from .honest import HonestMatrix
from .semiring import MaxPlusMatrix, mat_add, mat_mul, mat_power_naive, scalar_shift


def scalar_diag(n: int, b: int) -> MaxPlusMatrix:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    return MaxPlusMatrix(np.eye(n, dtype=np.int64) * b, np.eye(n, dtype=bool))


def d_matrix(H: HonestMatrix, b: int) -> MaxPlusMatrix:
    """D = scalar_diag(N, b) (+) A."""
    return mat_add(scalar_diag(H.N, b), H.dense)


def commute_check(M: MaxPlusMatrix, b: int) -> bool:
    B = scalar_diag(M.n, b)
    left = mat_mul(M, B)
    return left == mat_mul(B, M) and left == scalar_shift(M, b)


def decomposed_sweep(H: HonestMatrix, b: int, n_max: int) -> Iterator[MaxPlusMatrix]:
    """Yield D^1, ..., D^n_max from one ghost sweep over A^1, ..., A^n_max."""
    if n_max < 1:
        raise ValueError(f"n must be >= 1, got {n_max}")
    powers: list[MaxPlusMatrix] = []
    for state in ghost_sweep(H, n_max - 1):
        powers.append(state.X)
        n = len(powers)
        acc = mat_add(scalar_diag(H.N, n * b), powers[-1])
        for k in range(1, n):
            acc = mat_add(acc, scalar_shift(powers[k - 1], (n - k) * b))
        yield acc


def d_power_decomposed(H: HonestMatrix, b: int, n: int) -> MaxPlusMatrix:
    for Dn in decomposed_sweep(H, b, n):
        pass
    return Dn


def _check_banded(D: MaxPlusMatrix) -> None:
    n = D.n
    cols = np.arange(n)
    allowed = np.eye(n, dtype=bool)
    allowed[(cols + 1) % n, cols] = True
    allowed[(cols + 2) % n, cols] = True
    if (D.finite & ~allowed).any():
        raise ValueError("three-term method needs D finite only on the diagonal and the two honest bands")


def d_power_direct(D: MaxPlusMatrix, n: int, method: str = "naive") -> MaxPlusMatrix:
    """D^n by repeated full products ('naive') or repeated three-term updates ('three-term')."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if method == "naive":
        return mat_power_naive(D, n)
    if method == "three-term":
        _check_banded(D)
        Z = D
        for _ in range(n - 1):
            Z = three_term_update(Z, D)
        return Z
    raise ValueError(f"unknown method {method!r}; expected 'naive' or 'three-term'")
