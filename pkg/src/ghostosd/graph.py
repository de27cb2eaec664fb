"""Precedence graph of a max-plus matrix and brute-force path enumeration.

Edge convention: u -> v with weight A[v, u] whenever A[v, u] is finite, so a
length-l path u -> v contributes to A^l[v, u].  For an honest matrix every
vertex u has exactly the two successors u+1 and u+2 (cyclic).

Enumeration here is exponential on purpose; it is the independent oracle
for the cycle claims and is guarded by an explicit frontier cap.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .honest import idx
from .semiring import EPS, MaxPlusMatrix, MaxPlusValue, mat_mul, mp_add

DEFAULT_CAP = 1 << 20


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PrecedenceGraph:
    n: int
    edges: tuple[tuple[int, int, int], ...]
    succ: dict = field(compare=False, repr=False, default_factory=dict)


@dataclass(frozen=True, order=True)
class Path:
    vertices: tuple[int, ...]
    weight: int

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def steps(self, n: int) -> tuple[int, ...]:
        """Forward distance (v - u) mod n of each edge."""
        return tuple((v - u) % n for u, v in zip(self.vertices, self.vertices[1:]))


def build_graph(M: MaxPlusMatrix) -> PrecedenceGraph:
    edges = []
    succ: dict[int, list[tuple[int, int]]] = {u: [] for u in range(1, M.n + 1)}
    for v0, u0 in zip(*np.nonzero(M.finite)):
        u, v, w = int(u0) + 1, int(v0) + 1, int(M.values[v0, u0])
        edges.append((u, v, w))
    edges.sort()
    for u, v, w in edges:
        succ[u].append((v, w))
    return PrecedenceGraph(M.n, tuple(edges), succ)


def enumerate_paths(G: PrecedenceGraph, i: int, j: int, length: int, cap: int = DEFAULT_CAP) -> list[Path]:
    """All paths i -> j with exactly ``length`` edges, sorted by vertex sequence."""
    if length < 1:
        raise ValueError(f"path length must be >= 1, got {length}")
    frontier: list[tuple[tuple[int, ...], int]] = [((i,), 0)]
    for _ in range(length):
        nxt = []
        for verts, w in frontier:
            for v, ew in G.succ[verts[-1]]:
                nxt.append((verts + (v,), w + ew))
            if len(nxt) > cap:
                raise CapExceeded(f"search frontier exceeds cap {cap}")
        frontier = nxt
    return sorted(Path(verts, w) for verts, w in frontier if verts[-1] == j)


def max_path_weight(G: PrecedenceGraph, i: int, j: int, length: int, cap: int = DEFAULT_CAP) -> MaxPlusValue:
    best: MaxPlusValue = EPS
    for p in enumerate_paths(G, i, j, length, cap):
        best = mp_add(best, p.weight)
    return best


def max_cycle_weight(G: PrecedenceGraph, i: int, length: int, cap: int = DEFAULT_CAP) -> MaxPlusValue:
    return max_path_weight(G, i, i, length, cap)


def perfect_index(M: MaxPlusMatrix, p_max: int) -> int | None:
    """Smallest p in [2, p_max] with M^p free of EPS, or None."""
    if p_max < 2:
        raise ValueError(f"p_max must be >= 2, got {p_max}")
    X = M
    for p in range(2, p_max + 1):
        X = mat_mul(X, M)
        if X.all_finite():
            return p
    return None


def rotate_labels(M: MaxPlusMatrix, r: int) -> MaxPlusMatrix:
    """Relabel x -> idx(x - r): result[i, j] = M[idx(i + r), idx(j + r)]."""
    shift = idx(r + 1, M.n) - 1
    return MaxPlusMatrix(
        np.roll(M.values, (-shift, -shift), axis=(0, 1)),
        np.roll(M.finite, (-shift, -shift), axis=(0, 1)),
    )
