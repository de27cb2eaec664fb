"""The max-plus semiring over 64-bit integers.

Scalars are plain ``int`` for finite weights and the singleton :data:`EPS`
for the absorbing element -inf.  Matrices keep two parallel arrays: the
int64 weights and a boolean ``finite`` tag.  Entries whose tag is False are
epsilon; their weight slot is held at 0 and never takes part in arithmetic.

Indices in public accessors (``entry``, ``row``) are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class NegInf:
    """The semiring zero, -inf.  Use the module-level :data:`EPS`."""

    _instance: NegInf | None = None

    def __new__(cls) -> NegInf:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EPS"

    def __str__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (NegInf, ())

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


EPS = NegInf()

MaxPlusValue = Union[int, NegInf]


def _checked(v: int) -> int:
    if not INT64_MIN <= v <= INT64_MAX:
        raise OverflowError(f"max-plus weight {v} leaves the int64 range")
    return v


def mp_add(x: MaxPlusValue, y: MaxPlusValue) -> MaxPlusValue:
    """x (+) y = max(x, y), with EPS as the bottom element."""
    if x is EPS:
        return y
    if y is EPS:
        return x
    return max(x, y)


def mp_mul(x: MaxPlusValue, y: MaxPlusValue) -> MaxPlusValue:
    """x (x) y = x + y; EPS absorbs."""
    if x is EPS or y is EPS:
        return EPS
    return _checked(x + y)


@dataclass
class WorkCounter:
    """Tally of entry evaluations, by the kind of max taken.

    ``n_term`` counts entries produced by a full N-term max (the naive
    product), ``two_term``/``three_term`` count banded updates, and
    ``assigned`` counts entries written by a shortcut without any max.
    """

    n_term: int = 0
    two_term: int = 0
    three_term: int = 0
    assigned: int = 0


class MaxPlusMatrix:
    """Dense square matrix over the max-plus semiring.  Immutable."""

    __slots__ = ("values", "finite")

    def __init__(self, values, finite) -> None:
        values = np.array(values, dtype=np.int64)
        finite = np.array(finite, dtype=bool)
        if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {values.shape}")
        if finite.shape != values.shape:
            raise ValueError("finite mask shape does not match values")
        values[~finite] = 0
        values.flags.writeable = False
        finite.flags.writeable = False
        self.values = values
        self.finite = finite

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[MaxPlusValue]]) -> MaxPlusMatrix:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("rows must form a square matrix")
        finite = [[x is not EPS for x in r] for r in rows]
        values = []
        for r in rows:
            line = []
            for x in r:
                if x is EPS:
                    line.append(0)
                elif isinstance(x, (int, np.integer)) and not isinstance(x, bool):
                    line.append(_checked(int(x)))
                else:
                    raise TypeError(f"matrix entries must be int or EPS, got {x!r}")
            values.append(line)
        return cls(values, finite)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def entry(self, i: int, j: int) -> MaxPlusValue:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"entry ({i}, {j}) outside order {self.n}")
        if not self.finite[i - 1, j - 1]:
            return EPS
        return int(self.values[i - 1, j - 1])

    def row(self, i: int) -> tuple[MaxPlusValue, ...]:
        return tuple(self.entry(i, j) for j in range(1, self.n + 1))

    def column(self, j: int) -> tuple[MaxPlusValue, ...]:
        return tuple(self.entry(i, j) for i in range(1, self.n + 1))

    def rows(self) -> list[tuple[MaxPlusValue, ...]]:
        return [self.row(i) for i in range(1, self.n + 1)]

    def diagonal(self) -> tuple[MaxPlusValue, ...]:
        return tuple(self.entry(i, i) for i in range(1, self.n + 1))

    def finite_count(self) -> int:
        return int(self.finite.sum())

    def all_finite(self) -> bool:
        return bool(self.finite.all())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxPlusMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.finite, other.finite)
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"MaxPlusMatrix({self.rows()!r})"


def epsilon_matrix(n: int) -> MaxPlusMatrix:
    """The all-EPS matrix of order n (absorbing for the matrix product)."""
    return MaxPlusMatrix(np.zeros((n, n), dtype=np.int64), np.zeros((n, n), dtype=bool))


def _same_order(P: MaxPlusMatrix, Q: MaxPlusMatrix) -> int:
    if P.n != Q.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {Q.n}")
    return P.n


def _guard_sum(*bounds: int) -> None:
    if sum(bounds) > INT64_MAX:
        raise OverflowError("max-plus product could overflow int64")


def _absmax(M: MaxPlusMatrix) -> int:
    return int(np.abs(M.values).max()) if M.finite.any() else 0


def mat_mul(P: MaxPlusMatrix, Q: MaxPlusMatrix, work: WorkCounter | None = None) -> MaxPlusMatrix:
    """Full O(n^3) product; every entry is a max over all n terms.

    This is both the correctness oracle and the timing baseline, so it
    deliberately ignores sparsity.
    """
    n = _same_order(P, Q)
    if __debug__:
        _guard_sum(_absmax(P), _absmax(Q))
    pv, pf, qv, qf = P.values, P.finite, Q.values, Q.finite
    best = np.zeros((n, n), dtype=np.int64)
    fin = np.zeros((n, n), dtype=bool)
    for k in range(n):
        cand = pv[:, k, None] + qv[None, k, :]
        ok = pf[:, k, None] & qf[None, k, :]
        take = ok & (~fin | (cand > best))
        best = np.where(take, cand, best)
        fin |= ok
    if work is not None:
        work.n_term += n * n
    return MaxPlusMatrix(best, fin)


def mat_power_naive(M: MaxPlusMatrix, p: int, work: WorkCounter | None = None) -> MaxPlusMatrix:
    """M^p by a left fold of :func:`mat_mul` (no repeated squaring)."""
    if p < 1:
        raise ValueError(f"power must be >= 1, got {p}")
    X = M
    for _ in range(p - 1):
        X = mat_mul(X, M, work)
    return X


def naive_sweep(M: MaxPlusMatrix, p_max: int) -> Iterable[MaxPlusMatrix]:
    """Yield M, M^2, ..., M^p_max by repeated right multiplication."""
    X = M
    yield X
    for _ in range(p_max - 1):
        X = mat_mul(X, M)
        yield X


def mat_add(P: MaxPlusMatrix, Q: MaxPlusMatrix) -> MaxPlusMatrix:
    """Entrywise max."""
    _same_order(P, Q)
    both = P.finite & Q.finite
    values = np.where(both, np.maximum(P.values, Q.values), np.where(P.finite, P.values, Q.values))
    return MaxPlusMatrix(values, P.finite | Q.finite)


def scalar_shift(M: MaxPlusMatrix, c: int) -> MaxPlusMatrix:
    """Add c to every finite entry; EPS entries stay EPS."""
    if __debug__:
        _guard_sum(_absmax(M), abs(c))
    return MaxPlusMatrix(np.where(M.finite, M.values + c, 0), M.finite)


def support(M: MaxPlusMatrix) -> int:
    """Largest number of finite entries found in any single column."""
    return int(M.finite.sum(axis=0).max())


def vec_mul(u: Sequence[MaxPlusValue], M: MaxPlusMatrix) -> tuple[MaxPlusValue, ...]:
    """Row vector times matrix, u (x) M."""
    if len(u) != M.n:
        raise ValueError(f"dimension mismatch: vector {len(u)} vs order {M.n}")
    out = []
    for j in range(1, M.n + 1):
        acc: MaxPlusValue = EPS
        for k, x in enumerate(u, start=1):
            acc = mp_add(acc, mp_mul(x, M.entry(k, j)))
        out.append(acc)
    return tuple(out)


# Matrix text format v1

class FormatError(ValueError):
    pass


def format_matrix(M: MaxPlusMatrix) -> str:
    lines = ["maxplus v1", f"n {M.n}"]
    for r in M.rows():
        lines.append(" ".join(str(x) for x in r))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> MaxPlusMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "maxplus v1":
        raise FormatError("missing 'maxplus v1' header")
    head = lines[1].split() if len(lines) > 1 else []
    if len(head) != 2 or head[0] != "n":
        raise FormatError("second line must be 'n <N>'")
    try:
        n = int(head[1])
    except ValueError:
        raise FormatError(f"bad order {head[1]!r}") from None
    if n < 1:
        raise FormatError(f"order must be positive, got {n}")
    body = lines[2:]
    if len(body) != n:
        raise FormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for lineno, ln in enumerate(body, start=3):
        toks = ln.split()
        if len(toks) != n:
            raise FormatError(f"line {lineno}: expected {n} tokens, found {len(toks)}")
        row = []
        for t in toks:
            if t == "-inf":
                row.append(EPS)
                continue
            try:
                row.append(int(t))
            except ValueError:
                raise FormatError(f"line {lineno}: bad token {t!r}") from None
        rows.append(row)
    return MaxPlusMatrix.from_rows(rows)
