"""Independent pure-Python reference: nested lists, None for -inf."""
from __future__ import annotations

import pytest
from hypothesis import settings

from ghostosd.semiring import EPS, MaxPlusMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def ref_mul(P, Q):
    n = len(P)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            best = None
            for k in range(n):
                if P[i][k] is None or Q[k][j] is None:
                    continue
                s = P[i][k] + Q[k][j]
                if best is None or s > best:
                    best = s
            out[i][j] = best
    return out


def ref_power(M, p):
    X = M
    for _ in range(p - 1):
        X = ref_mul(X, M)
    return X


def ref_honest(a, b):
    n = len(a)
    M = [[None] * n for _ in range(n)]
    for j in range(n):
        M[(j + 1) % n][j] = a[j]
        M[(j + 2) % n][j] = b[j]
    return M


def to_lists(M: MaxPlusMatrix):
    return [[None if x is EPS else int(x) for x in row] for row in M.rows()]


def from_lists(rows) -> MaxPlusMatrix:
    return MaxPlusMatrix.from_rows([[EPS if x is None else x for x in row] for row in rows])


@pytest.fixture
def a1():
    from ghostosd.honest import build_honest
    return build_honest(2, [1] * 5, [-1] * 5)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
