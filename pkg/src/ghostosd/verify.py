"""Every structural law of the library, checked against brute force.

Each check yields :class:`Check` lines.  ``finding`` lines (CA diagram
verdicts, apex tallies) are informational and never fail the run.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .decomposition import commute_check, d_matrix, d_power_decomposed, d_power_direct, scalar_diag
from .ghost import Apex, ghost_sweep
from .graph import build_graph, enumerate_paths, max_cycle_weight, perfect_index
from .honest import HonestMatrix, random_honest, top_cycle_weight, window
from .jetblack import RuleVariant, diagram_check_ca, diagram_check_poly
from .semiring import (
    EPS, MaxPlusMatrix, format_matrix, mat_mul, mp_add, mp_mul, naive_sweep, parse_matrix, support,
)


@dataclass(frozen=True)
class Check:
    status: str   # "PASS", "FAIL", "FINDING"
    name: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.status} {self.name}" + (f" {self.detail}" if self.detail else "")


def _result(name: str, failures: list[str], count: int) -> Check:
    if failures:
        return Check("FAIL", name, f"{len(failures)}/{count} failed; first: {failures[0]}")
    return Check("PASS", name, f"{count} cases")


def _random_dense(rng: np.random.Generator, n: int, density: float = 0.6) -> MaxPlusMatrix:
    return MaxPlusMatrix(rng.integers(-50, 51, size=(n, n)), rng.random((n, n)) < density)


def check_semiring(rng: np.random.Generator) -> Iterator[Check]:
    vals = [EPS, 0, 1, -3, 7, -50, 50]
    fails = []
    count = 0
    for x in vals:
        for y in vals:
            for z in vals:
                count += 1
                if mp_add(x, y) != mp_add(y, x) or mp_add(x, x) != x:
                    fails.append(f"add laws at {x},{y}")
                if mp_add(mp_add(x, y), z) != mp_add(x, mp_add(y, z)):
                    fails.append(f"add assoc at {x},{y},{z}")
                if mp_mul(mp_mul(x, y), z) != mp_mul(x, mp_mul(y, z)) or mp_mul(x, y) != mp_mul(y, x):
                    fails.append(f"mul laws at {x},{y},{z}")
                if mp_mul(x, mp_add(y, z)) != mp_add(mp_mul(x, y), mp_mul(x, z)):
                    fails.append(f"distributivity at {x},{y},{z}")
    yield _result("semiring-laws", fails, count)

    fails = []
    for t in range(20):
        n = int(rng.integers(4, 9))
        P, Q, R = (_random_dense(rng, n) for _ in range(3))
        if mat_mul(mat_mul(P, Q), R) != mat_mul(P, mat_mul(Q, R)):
            fails.append(f"trial {t} n={n}")
        if parse_matrix(format_matrix(P)) != P:
            fails.append(f"round-trip trial {t}")
        if not commute_check(P, int(rng.integers(-50, 51))):
            fails.append(f"commutation trial {t}")
    yield _result("matmul-assoc+roundtrip+commute", fails, 20)

    B = MaxPlusMatrix.from_rows([[3, EPS, 4], [EPS, 1, -2], [EPS, EPS, EPS]])
    ok = support(B) == 2
    yield Check("PASS" if ok else "FAIL", "support-example", f"supp(B)={support(B)}")


def check_matrix(H: HonestMatrix, corrupt: bool = False) -> Iterator[Check]:
    """All laws that take a single honest matrix.  ``corrupt`` flips one oracle entry."""
    m, N = H.m, H.N
    tag = f"m={m}"
    A = H.dense
    L = top_cycle_weight(H)
    naive = list(naive_sweep(A, 4 * N))
    if corrupt:
        X = naive[1]
        values = X.values.copy()
        values[0, 0] += 1
        finite = X.finite.copy()
        finite[0, 0] = True
        naive[1] = MaxPlusMatrix(values, finite)

    fails = []
    states = list(ghost_sweep(H, 4 * N - 1, verify=True))
    for st in states:
        if st.X != naive[st.k]:
            fails.append(f"k={st.k}")
        fails.extend(st.findings)
    yield _result(f"oracle-equivalence {tag}", fails, len(states))

    fails = []
    for k in range(1, m):
        if not np.array_equal(naive[k].finite, window(H, k).pattern()):
            fails.append(f"k={k}")
        if set(naive[k].finite.sum(axis=1).tolist()) != {k + 2}:
            fails.append(f"row count k={k}")
    yield _result(f"sparsity-window {tag}", fails, max(m - 1, 0))

    fails = [f"A^{k}" for k in range(1, m + 1) if naive[k - 1].finite.diagonal().any()]
    yield _result(f"short-cycles {tag}", fails, m)

    fails = []
    X2m = states[2 * m].X
    if set(X2m.diagonal()) != {L}:
        fails.append(f"X(2m) diagonal {X2m.diagonal()} != L={L}")
    apex = states[2 * m].apex
    if apex is Apex.HOLDS:
        for alpha in (2, 3, 4):
            diag = set(naive[alpha * N - 1].diagonal())
            if diag != {alpha * L}:
                fails.append(f"alpha={alpha} diag {diag}")
    yield _result(f"diagonal-laws {tag}", fails, 4 if apex is Apex.HOLDS else 1)

    fails = []
    p = perfect_index(A, 4 * m)
    if p != 2 * m:
        fails.append(f"perfect_index={p}")
    if naive[2 * m - 2].entry(1, 4) is not EPS:
        fails.append("A^(2m-1)(1,4) finite")
    yield _result(f"perfectness {tag}", fails, 2)

    rep = diagram_check_poly(H)
    yield _result(f"jetblack-poly {tag}", [] if rep.passed else [rep.lines()[0]], len(rep.steps))

    if support(A) != 2 or int(A.finite.sum(axis=0).min()) != 2:
        yield Check("FAIL", f"honest-support {tag}")
    else:
        yield Check("PASS", f"honest-support {tag}")


def check_graph(H: HonestMatrix) -> Iterator[Check]:
    m, N = H.m, H.N
    G = build_graph(H.dense)
    L = top_cycle_weight(H)
    fails = []
    vertices = range(1, N + 1)
    for i in vertices:
        for ell in range(1, m + 1):
            if enumerate_paths(G, i, i, ell):
                fails.append(f"P({i},{i};{ell}) nonempty")
        cycles = enumerate_paths(G, i, i, N)
        if len(cycles) != 2:
            fails.append(f"#P({i},{i};{N})={len(cycles)}")
        if max_cycle_weight(G, i, N) != L:
            fails.append(f"Gamma at {i}")
        top = [c for c in cycles if c.weight == L]
        if not top or any(2 in c.steps(N) for c in top):
            fails.append(f"maximiser at {i} uses a skip edge")
    yield _result(f"cycle-census m={m}", fails, N)


def check_decomposition(H: HonestMatrix) -> Iterator[Check]:
    m, N = H.m, H.N
    fails = []
    count = 0
    for b in sorted({1, m, 50}):
        D = d_matrix(H, b)
        for n in range(1, 2 * N + 1):
            count += 1
            ref = d_power_direct(D, n, "naive")
            if d_power_direct(D, n, "three-term") != ref:
                fails.append(f"three-term b={b} n={n}")
            if d_power_decomposed(H, b, n) != ref:
                fails.append(f"decomposed b={b} n={n}")
    fails.extend(f"commute b={b}" for b in (0, 1, m, 50) if not commute_check(H.dense, b))
    yield _result(f"decomposition m={m}", fails, count)


def run_verify(
    m_min: int = 2,
    m_max: int = 6,
    seeds: int = 5,
    self_test: bool = False,
    emit: Callable[[Check], None] | None = None,
) -> list[Check]:
    out: list[Check] = []

    def push(checks: Iterator[Check]) -> None:
        for c in checks:
            out.append(c)
            if emit is not None:
                emit(c)

    push(check_semiring(np.random.default_rng(0)))
    for m in range(m_min, m_max + 1):
        apex_hits = 0
        for s in range(seeds):
            H = random_honest(m, s)
            push(check_matrix(H, corrupt=self_test and m == m_min and s == 0))
            last = None
            for last in ghost_sweep(H, 2 * m):
                pass
            apex_hits += last.apex is Apex.HOLDS
            if m <= 6 and s == 0:
                push(check_decomposition(H))
            if m <= 3:
                push(check_graph(H))
        push(iter([Check("FINDING", f"apex-frequency m={m}", f"{apex_hits}/{seeds} seeds")]))
        for variant in RuleVariant:
            rep = diagram_check_ca(random_honest(m, 0), variant)
            div = rep.first_divergence
            push(iter([Check(
                "FINDING", f"ca-diagram m={m} variant={variant.value}",
                ("pass" if rep.passed else "fail") + (f" first divergence at step {div}" if div is not None else ""),
            )]))
    return out
