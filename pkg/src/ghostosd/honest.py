"""Honest matrices: order 2m+1, finite exactly on the two cyclic sub-diagonal bands.

Column j carries ``a[j] > 0`` at row j+1 and ``b[j] < 0`` at row j+2, both
rows reduced cyclically onto [1, N].  Weights are stored per column.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .semiring import EPS, MaxPlusMatrix, MaxPlusValue, parse_matrix, FormatError


class HonestError(ValueError):
    pass


class BadOrder(HonestError):
    pass


class BadLength(HonestError):
    pass


class SignViolation(HonestError):
    pass


class NotHonest(HonestError):
    """A dense matrix whose finite pattern is not the honest band pattern."""


def idx(x: int, N: int) -> int:
    """Reduce any integer index onto [1, N], N-periodically."""
    if N < 1:
        raise ValueError(f"order must be positive, got {N}")
    return (x - 1) % N + 1


@dataclass(frozen=True)
class HonestMatrix:
    m: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise BadOrder(f"m must be >= 2, got {self.m}")
        N = 2 * self.m + 1
        if len(self.a) != N or len(self.b) != N:
            raise BadLength(f"bands must have length {N}, got {len(self.a)} and {len(self.b)}")
        for j, (aj, bj) in enumerate(zip(self.a, self.b), start=1):
            if aj <= 0:
                raise SignViolation(f"a_{j} = {aj} must be > 0")
            if bj >= 0:
                raise SignViolation(f"b_{j} = {bj} must be < 0")

    @property
    def N(self) -> int:
        return 2 * self.m + 1

    @cached_property
    def a_arr(self) -> np.ndarray:
        return np.array(self.a, dtype=np.int64)

    @cached_property
    def b_arr(self) -> np.ndarray:
        return np.array(self.b, dtype=np.int64)

    @cached_property
    def dense(self) -> MaxPlusMatrix:
        N = self.N
        values = np.zeros((N, N), dtype=np.int64)
        finite = np.zeros((N, N), dtype=bool)
        cols = np.arange(N)
        values[(cols + 1) % N, cols] = self.a_arr
        values[(cols + 2) % N, cols] = self.b_arr
        finite[(cols + 1) % N, cols] = True
        finite[(cols + 2) % N, cols] = True
        return MaxPlusMatrix(values, finite)


def build_honest(m: int, a: Sequence[int], b: Sequence[int]) -> HonestMatrix:
    return HonestMatrix(int(m), tuple(int(x) for x in a), tuple(int(x) for x in b))


class SplitMix64:
    """The splitmix64 generator (Steele, Lea, Flood), 64-bit state."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        # modulus mapping; the bias is ~2^-58 for the ranges used here
        return lo + self.next() % (hi - lo + 1)


def random_honest(m: int, seed: int) -> HonestMatrix:
    """a_j uniform in [1, 50], b_j uniform in [-50, -1]; all a drawn before b."""
    if m < 2:
        raise BadOrder(f"m must be >= 2, got {m}")
    rng = SplitMix64(seed)
    N = 2 * m + 1
    a = [rng.randint(1, 50) for _ in range(N)]
    b = [rng.randint(-50, -1) for _ in range(N)]
    return build_honest(m, a, b)


def to_dense(H: HonestMatrix) -> MaxPlusMatrix:
    return H.dense


def from_dense(M: MaxPlusMatrix) -> HonestMatrix:
    """Recover the bands of a dense honest matrix, or raise NotHonest/SignViolation."""
    N = M.n
    if N < 5 or N % 2 == 0:
        raise NotHonest(f"honest matrices have odd order >= 5, got {N}")
    cols = np.arange(N)
    expected = np.zeros((N, N), dtype=bool)
    expected[(cols + 1) % N, cols] = True
    expected[(cols + 2) % N, cols] = True
    if not np.array_equal(M.finite, expected):
        bad = np.argwhere(M.finite != expected)[0] + 1
        raise NotHonest(
            f"finite pattern differs from the honest bands first at ({bad[0]}, {bad[1]})"
        )
    a = M.values[(cols + 1) % N, cols]
    b = M.values[(cols + 2) % N, cols]
    return build_honest((N - 1) // 2, a.tolist(), b.tolist())


def column_u(H: HonestMatrix, i: int) -> tuple[MaxPlusValue, ...]:
    """Column i of the dense form: a_i at row i+1, b_i at row i+2."""
    if not 1 <= i <= H.N:
        raise IndexError(f"column {i} outside [1, {H.N}]")
    col: list[MaxPlusValue] = [EPS] * H.N
    col[idx(i + 1, H.N) - 1] = H.a[i - 1]
    col[idx(i + 2, H.N) - 1] = H.b[i - 1]
    return tuple(col)


def top_cycle_weight(H: HonestMatrix) -> int:
    """L: weight of the Hamiltonian cycle along the +1 band (a_N closes it)."""
    return sum(H.a)


@dataclass(frozen=True)
class Window:
    """Finite-entry window of X(k) = A^(k+1) for 1 <= k <= m-1.

    Row i is finite exactly at columns idx(i + t) for t in ``offsets``.
    """

    k: int
    N: int
    beta1: int
    beta2: int
    offsets: tuple[int, ...]

    def columns(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(idx(i + t, self.N) for t in self.offsets))

    def pattern(self) -> np.ndarray:
        mask = np.zeros((self.N, self.N), dtype=bool)
        rows = np.arange(self.N)
        for t in self.offsets:
            mask[rows, (rows + t) % self.N] = True
        return mask


def window(H: HonestMatrix, k: int) -> Window:
    m = H.m
    if not 1 <= k <= m - 1:
        raise ValueError(f"window law only holds for 1 <= k <= m-1 = {m - 1}, got k={k}")
    beta1 = 2 * (m + 1) - 2 * k - 3
    beta2 = 2 * (m + 1) - k
    offsets = tuple(sorted({idx(t, H.N) for t in range(beta1, beta2 - 1)}))
    return Window(k, H.N, beta1, beta2, offsets)


# Compact honest format: "honest v1", "m <m>", "a: ...", "b: ..."

def format_honest(H: HonestMatrix) -> str:
    return "\n".join([
        "honest v1",
        f"m {H.m}",
        "a: " + " ".join(map(str, H.a)),
        "b: " + " ".join(map(str, H.b)),
    ]) + "\n"


def parse_honest(text: str) -> HonestMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 4 or lines[0] != "honest v1":
        raise FormatError("compact honest form needs 4 lines starting with 'honest v1'")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "m":
        raise FormatError("second line must be 'm <m>'")
    bands = {}
    for ln, key in zip(lines[2:], ("a:", "b:")):
        toks = ln.split()
        if not toks or toks[0] != key:
            raise FormatError(f"expected line starting with {key!r}")
        try:
            bands[key] = [int(t) for t in toks[1:]]
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    try:
        m = int(head[1])
    except ValueError:
        raise FormatError(f"bad m {head[1]!r}") from None
    return build_honest(m, bands["a:"], bands["b:"])


def load_text(text: str) -> MaxPlusMatrix | HonestMatrix:
    """Parse either the dense v1 format or the compact honest form."""
    first = text.lstrip().split("\n", 1)[0].strip()
    if first == "honest v1":
        return parse_honest(text)
    return parse_matrix(text)
