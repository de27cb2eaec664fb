"""Support patterns of row vectors as F2 polynomials, and the cellular automaton mirror.

``h_map`` sends a max-plus vector v of length N = 2m+1 to the polynomial
with a term x^(N+1-i) for every finite v_i.  Exponents always live in
[1, N] and reduce modulo N (so x^(N+1) = x).  Under this encoding, right
multiplication by an honest matrix moves a cyclic run of exponents
[lo, hi] to [lo+1, hi+2]; ``g_rule`` is that move in polynomial form,

    g(p) = p + x^(hi+2) + x^(hi+1) + x^lo.

The cellular automaton side copies coefficients to cells (``hprime``) and
steps with H = L o S.  S flips one extremal set cell and L flips the two
cells above an extremum.  Which extremum is taken depends on the variant:

* LITERAL: S flips the largest set index, L flips min+1 and min+2.
* SWAPPED: S flips the smallest set index, L flips max+1 and max+2.
* RUN: S flips the run bottom, L flips run top+1 and top+2, with the run
  endpoints tracked across the step rather than read off cell indices.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Sequence

from .honest import HonestMatrix, idx
from .semiring import EPS, MaxPlusMatrix, MaxPlusValue, vec_mul


class NotARun(ValueError):
    """Support is empty, full, or not a single cyclic run."""


class ZeroState(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class RuleVariant(enum.Enum):
    LITERAL = "literal"
    SWAPPED = "swapped"
    RUN = "run"


@dataclass(frozen=True)
class F2Poly:
    """Polynomial over F2 with exponents in [1, 2m+1]; bit e-1 holds x^e."""

    m: int
    bits: int = 0

    @property
    def N(self) -> int:
        return 2 * self.m + 1

    @classmethod
    def from_exponents(cls, m: int, exponents) -> F2Poly:
        N = 2 * m + 1
        bits = 0
        for e in exponents:
            bits ^= 1 << (idx(e, N) - 1)
        return cls(m, bits)

    @classmethod
    def full(cls, m: int) -> F2Poly:
        return cls(m, (1 << (2 * m + 1)) - 1)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for e in range(1, self.N + 1) if self.bits >> (e - 1) & 1)

    def coeff(self, e: int) -> int:
        return self.bits >> (idx(e, self.N) - 1) & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: F2Poly) -> F2Poly:
        if other.m != self.m:
            raise ValueError("cannot add polynomials from different F_{2m+1}")
        return F2Poly(self.m, self.bits ^ other.bits)

    def bitstring(self) -> str:
        """Coefficients of x^1 .. x^N, left to right."""
        return "".join(str(self.coeff(e)) for e in range(1, self.N + 1))

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for e in reversed(self.exponents):
            terms.append("x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


def cyclic_run(set_positions: Sequence[int], N: int) -> tuple[int, int]:
    """(bottom, top) of a proper cyclic run of positions in [1, N], top >= bottom unreduced."""
    s = set(set_positions)
    if not s or len(s) == N:
        raise NotARun("empty or full support has no unique run endpoints")
    starts = [p for p in s if idx(p - 1, N) not in s]
    if len(starts) != 1:
        raise NotARun(f"support {sorted(s)} is not a single cyclic run")
    bottom = starts[0]
    return bottom, bottom + len(s) - 1


def h_map(v: Sequence[MaxPlusValue]) -> F2Poly:
    N = len(v)
    if N < 3 or N % 2 == 0:
        raise ValueError(f"vector length must be odd 2m+1 >= 3, got {N}")
    m = (N - 1) // 2
    return F2Poly.from_exponents(m, [N + 1 - i for i, x in enumerate(v, start=1) if x is not EPS])


def g_rule(p: F2Poly) -> F2Poly:
    lo, hi = cyclic_run(p.exponents, p.N)
    return p + F2Poly.from_exponents(p.m, [hi + 2, hi + 1, lo])


@dataclass(frozen=True)
class CAState:
    """Cells 1..2m+1 over F2.  ``run`` carries tracked (bottom, top) endpoints for RUN."""

    m: int
    cells: tuple[int, ...]
    run: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.cells) != 2 * self.m + 1:
            raise ValueError(f"CA state needs {2 * self.m + 1} cells, got {len(self.cells)}")

    @property
    def N(self) -> int:
        return 2 * self.m + 1

    def set_cells(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cells, start=1) if c)

    def flip(self, *positions: int) -> CAState:
        cells = list(self.cells)
        for p in positions:
            cells[idx(p, self.N) - 1] ^= 1
        return CAState(self.m, tuple(cells), self.run)

    def bitstring(self) -> str:
        return "".join(map(str, self.cells))


def hprime(p: F2Poly) -> CAState:
    return CAState(p.m, tuple(p.coeff(j) for j in range(1, p.N + 1)))


def _tracked_run(state: CAState) -> tuple[int, int]:
    if state.run is not None:
        return state.run
    return cyclic_run(state.set_cells(), state.N)


def s_rule(state: CAState, variant: RuleVariant) -> CAState:
    if variant is RuleVariant.RUN:
        if state.run is None and not any(state.cells):
            raise ZeroState("S needs a set cell")
        lo, hi = _tracked_run(state)
        if hi < lo:
            raise ZeroState("S needs a non-empty run")
        return replace(state.flip(lo), run=(lo + 1, hi))
    on = state.set_cells()
    if not on:
        raise ZeroState("S needs a set cell")
    target = max(on) if variant is RuleVariant.LITERAL else min(on)
    return state.flip(target)


def l_rule(state: CAState, variant: RuleVariant) -> CAState:
    if variant is RuleVariant.RUN:
        if state.run is None and not any(state.cells):
            raise ZeroState("L needs a set cell")
        lo, hi = _tracked_run(state)
        return replace(state.flip(hi + 1, hi + 2), run=(lo, hi + 2))
    on = state.set_cells()
    if not on:
        raise ZeroState("L needs a set cell")
    base = min(on) if variant is RuleVariant.LITERAL else max(on)
    return state.flip(base + 1, base + 2)


def h245(state: CAState, variant: RuleVariant) -> CAState:
    """L o S: apply S, then L."""
    return l_rule(s_rule(state, variant), variant)


def f_map(u: Sequence[MaxPlusValue], A: MaxPlusMatrix) -> tuple[MaxPlusValue, ...]:
    """u -> u (x) A, the single vector map behind every f_i."""
    return vec_mul(u, A)


@dataclass(frozen=True)
class StepLine:
    k: int
    lhs: str
    rhs: str
    match: bool

    def __str__(self) -> str:
        return f"{self.k} | {self.lhs} | {self.rhs} | {'match' if self.match else 'differ'}"


@dataclass(frozen=True)
class PolyDiagramReport:
    m: int
    steps: tuple[StepLine, ...]
    terminal: F2Poly
    terminal_ok: bool

    @property
    def passed(self) -> bool:
        return self.terminal_ok and all(s.match for s in self.steps)

    def lines(self) -> list[str]:
        out = [str(s) for s in self.steps]
        out.append(f"terminal | {self.terminal.bitstring()} | {F2Poly.full(self.m).bitstring()} | "
                   f"{'match' if self.terminal_ok else 'differ'}")
        return out


def diagram_check_poly(H: HonestMatrix) -> PolyDiagramReport:
    """Compare h(e (x) A^k) with g^k(h(e)), e = row 1 of A, for k = 1..2m-1."""
    A = H.dense
    e = A.row(1)
    u = e
    p = h_map(e)
    steps = []
    for k in range(1, 2 * H.m):
        u = f_map(u, A)
        p = g_rule(p)
        lhs = h_map(u)
        steps.append(StepLine(k, lhs.bitstring(), p.bitstring(), lhs == p))
    terminal = h_map(u)
    return PolyDiagramReport(H.m, tuple(steps), terminal, terminal == F2Poly.full(H.m))


@dataclass(frozen=True)
class CADiagramReport:
    m: int
    variant: RuleVariant
    lhs: tuple[str, ...]          # hprime(h(e (x) A^j)), j = 0..2m-1
    rhs: tuple[str, ...]          # H245^j(hprime(h(e))), as far as it got
    passed: bool
    failed_at: int | None = None  # step at which a ZeroState/NotARun stopped the iteration
    error: str | None = None

    @property
    def first_divergence(self) -> int | None:
        for j, (l, r) in enumerate(zip(self.lhs, self.rhs)):
            if l != r:
                return j
        return None

    def lines(self) -> list[str]:
        out = []
        for j in range(len(self.lhs)):
            r = self.rhs[j] if j < len(self.rhs) else "-"
            out.append(f"{j} | {self.lhs[j]} | {r} | {'match' if self.lhs[j] == r else 'differ'}")
        tail = "PASS" if self.passed else "FAIL"
        if self.error:
            tail += f" (step {self.failed_at}: {self.error})"
        out.append(f"verdict {self.variant.value} m={self.m}: {tail}")
        return out


def _ca_trajectory(start: CAState, steps: int, variant: RuleVariant):
    traj = [start]
    state = start
    for j in range(1, steps + 1):
        try:
            state = h245(state, variant)
        except (ZeroState, NotARun) as exc:
            return traj, j, f"{type(exc).__name__}: {exc}"
        traj.append(state)
    return traj, None, None


def diagram_check_ca(H: HonestMatrix, variant: RuleVariant) -> CADiagramReport:
    """Compare hprime(h(e (x) A^(2m-1))) with H245^(2m-1)(hprime(h(e)))."""
    A = H.dense
    u = A.row(1)
    lhs = [hprime(h_map(u))]
    for _ in range(2 * H.m - 1):
        u = f_map(u, A)
        lhs.append(hprime(h_map(u)))
    rhs, failed_at, error = _ca_trajectory(lhs[0], 2 * H.m - 1, variant)
    passed = failed_at is None and rhs[-1] == lhs[-1]
    return CADiagramReport(
        H.m, variant,
        tuple(s.bitstring() for s in lhs), tuple(s.bitstring() for s in rhs),
        passed, failed_at, error,
    )


@dataclass(frozen=True)
class PatternResult:
    support: tuple[int, ...]
    holds: bool
    lhs: str
    rhs: tuple[str, ...]
    error: str | None = None


def unit_honest(m: int) -> HonestMatrix:
    """Honest matrix with a = 1 and b = -1 everywhere; supports depend only on the pattern."""
    N = 2 * m + 1
    return HonestMatrix(m, (1,) * N, (-1,) * N)


def evaluate_pattern(support: Sequence[int], H: HonestMatrix, variant: RuleVariant) -> PatternResult:
    """Test the 2m-1 step CA identity for u = 1 on ``support``, EPS elsewhere."""
    N = H.N
    on = set(support)
    u: tuple[MaxPlusValue, ...] = tuple(1 if i in on else EPS for i in range(1, N + 1))
    A = H.dense
    w = u
    for _ in range(2 * H.m - 1):
        w = f_map(w, A)
    lhs = hprime(h_map(w))
    traj, failed_at, error = _ca_trajectory(hprime(h_map(u)), 2 * H.m - 1, variant)
    holds = failed_at is None and traj[-1] == lhs
    return PatternResult(tuple(sorted(on)), holds, lhs.bitstring(), tuple(s.bitstring() for s in traj), error)


def pattern_search(
    m: int,
    pattern_budget: int,
    variant: RuleVariant = RuleVariant.RUN,
    H: HonestMatrix | None = None,
) -> list[PatternResult]:
    """Every support pattern for which the CA identity holds, sorted by support."""
    N = 2 * m + 1
    total = 1 << N
    if pattern_budget < total:
        raise BudgetExceeded(f"{total} patterns for m={m} exceed the budget {pattern_budget}")
    H = H if H is not None else unit_honest(m)
    found = []
    for bits in product((0, 1), repeat=N):
        supp = [i for i, bit in enumerate(bits, start=1) if bit]
        res = evaluate_pattern(supp, H, variant)
        if res.holds:
            found.append(res)
    return sorted(found, key=lambda r: r.support)
