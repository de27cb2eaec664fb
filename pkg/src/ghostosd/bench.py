"""Timing harness for the sequential power sweeps, with a checksum gate.

Each workload computes X(1), ..., X(k_max) (or Z(1), ..., Z(k_max) for
D = B (+) A) in order on the calling thread.  Before anything is timed, the
final matrix of every method is checked against the naive method; a
mismatch aborts the run.
"""
from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .decomposition import d_matrix, decomposed_sweep
from .ghost import ghost_sweep, three_term_update
from .honest import HonestMatrix, random_honest
from .semiring import MaxPlusMatrix, mat_mul

A_METHODS = ("naive", "ghost")
D_METHODS = ("naive", "three-term", "decomposed")
CSV_COLUMNS = ("m", "seed", "method", "k_max", "reps", "median_ns", "checksum")


class ChecksumMismatch(RuntimeError):
    pass


def checksum(M: MaxPlusMatrix) -> str:
    """Sum of finite entries mod 2^64 (hex) joined to the EPS count."""
    total = int(M.values[M.finite].astype(object).sum()) if M.finite.any() else 0
    eps = M.n * M.n - M.finite_count()
    return f"{total % (1 << 64):016x}:{eps}"


@dataclass(frozen=True)
class BenchRecord:
    m: int
    seed: int
    method: str
    k_max: int
    reps: int
    median_ns: int
    checksum: str


@dataclass(frozen=True)
class BenchConfig:
    m_values: tuple[int, ...]
    seeds: tuple[int, ...] = (0,)
    beta: int | None = None          # None: k_max = 2m; else k_max = beta*(2m+1) - 1
    reps: int = 3
    warmup: int = 1
    methods: tuple[str, ...] = A_METHODS
    target: str = "A"                # "A": powers of A; "D": powers of D = B (+) A
    diag: int | None = None          # [B]_ii for target D; None means m
    out: Path | None = None

    def __post_init__(self) -> None:
        if self.reps < 3:
            raise ValueError(f"reps must be >= 3 for a meaningful median, got {self.reps}")
        if self.warmup < 1:
            raise ValueError(f"warmup must be >= 1, got {self.warmup}")
        if self.beta is not None and self.beta < 1:
            raise ValueError(f"beta must be >= 1, got {self.beta}")
        allowed = A_METHODS if self.target == "A" else D_METHODS if self.target == "D" else None
        if allowed is None:
            raise ValueError(f"target must be 'A' or 'D', got {self.target!r}")
        bad = [mt for mt in self.methods if mt not in allowed]
        if bad:
            raise ValueError(f"methods {bad} not available for target {self.target}; choose from {allowed}")
        if any(m < 2 for m in self.m_values):
            raise ValueError("every m must be >= 2")

    def k_max(self, m: int) -> int:
        return 2 * m if self.beta is None else self.beta * (2 * m + 1) - 1


def _naive_sweep(M: MaxPlusMatrix, k_max: int) -> MaxPlusMatrix:
    X = M
    for _ in range(k_max):
        X = mat_mul(X, M)
    return X


def _ghost(H: HonestMatrix, k_max: int) -> MaxPlusMatrix:
    for state in ghost_sweep(H, k_max):
        pass
    return state.X


def _three_term(D: MaxPlusMatrix, k_max: int) -> MaxPlusMatrix:
    Z = D
    for _ in range(k_max):
        Z = three_term_update(Z, D)
    return Z


def _decomposed(H: HonestMatrix, b: int, k_max: int) -> MaxPlusMatrix:
    for Z in decomposed_sweep(H, b, k_max + 1):
        pass
    return Z


def workloads(config: BenchConfig, H: HonestMatrix) -> dict[str, Callable[[], MaxPlusMatrix]]:
    k_max = config.k_max(H.m)
    if config.target == "A":
        return {
            "naive": lambda: _naive_sweep(H.dense, k_max),
            "ghost": lambda: _ghost(H, k_max),
        }
    b = H.m if config.diag is None else config.diag
    D = d_matrix(H, b)
    return {
        "naive": lambda: _naive_sweep(D, k_max),
        "three-term": lambda: _three_term(D, k_max),
        "decomposed": lambda: _decomposed(H, b, k_max),
    }


def time_median_ns(fn: Callable[[], object], reps: int, warmup: int) -> int:
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(statistics.median(samples))


def run_bench(config: BenchConfig, progress: Callable[[BenchRecord], None] | None = None) -> list[BenchRecord]:
    records = []
    for m in config.m_values:
        for seed in config.seeds:
            H = random_honest(m, seed)
            work = workloads(config, H)
            reference = checksum(work["naive"]())
            for method in config.methods:
                got = checksum(work[method]())
                if got != reference:
                    raise ChecksumMismatch(
                        f"m={m} seed={seed} method={method}: checksum {got} != naive {reference}"
                    )
            for method in config.methods:
                rec = BenchRecord(
                    m, seed, method, config.k_max(m), config.reps,
                    time_median_ns(work[method], config.reps, config.warmup), reference,
                )
                records.append(rec)
                if progress is not None:
                    progress(rec)
    if config.out is not None:
        write_csv(records, config.out)
    return records


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([getattr(r, c) for c in CSV_COLUMNS])
    return buf.getvalue()


def write_csv(records: Iterable[BenchRecord], path: Path | str) -> None:
    Path(path).write_text(records_to_csv(records))


def parse_csv(text: str) -> list[BenchRecord]:
    reader = csv.DictReader(io.StringIO(text))
    missing = [c for c in CSV_COLUMNS if c not in (reader.fieldnames or ())]
    if missing:
        raise ValueError(f"CSV is missing columns {missing}")
    types = {f.name: f.type for f in fields(BenchRecord)}
    out = []
    for row in reader:
        out.append(BenchRecord(**{
            c: int(row[c]) if types[c] == "int" else row[c] for c in CSV_COLUMNS
        }))
    return out


def read_csv(path: Path | str) -> list[BenchRecord]:
    return parse_csv(Path(path).read_text())


def median_by_m(records: Sequence[BenchRecord]) -> dict[str, dict[int, float]]:
    """method -> m -> median over seeds of median_ns."""
    grouped: dict[str, dict[int, list[int]]] = {}
    for r in records:
        grouped.setdefault(r.method, {}).setdefault(r.m, []).append(r.median_ns)
    return {
        method: {m: statistics.median(v) for m, v in sorted(by_m.items())}
        for method, by_m in grouped.items()
    }


_SERIES_STYLE = {
    "t1": "lc rgb 'red'",
    "t2": "lc rgb 'blue'",
    "t1-t2": "lc rgb 'dark-green'",
    "t3": "lc rgb 'dark-green'",
}


def emit_plot_script(records: Sequence[BenchRecord], title: str = "processing time vs m") -> str:
    """Gnuplot script with inline data: t1 (naive), t2 (ghost or decomposed), and
    t1 - t2 for A-sweeps or t3 (three-term) for D-sweeps."""
    med = median_by_m(records)
    series: list[tuple[str, str, dict[int, float]]] = []
    if "naive" in med:
        series.append(("t1", "t1 naive", med["naive"]))
    if "ghost" in med:
        series.append(("t2", "t2 ghost", med["ghost"]))
        if "naive" in med:
            diff = {m: med["naive"][m] - med["ghost"][m] for m in med["ghost"] if m in med["naive"]}
            series.append(("t1-t2", "t1 - t2", diff))
    if "decomposed" in med:
        series.append(("t2", "t2 decomposed", med["decomposed"]))
    if "three-term" in med:
        series.append(("t3", "t3 three-term", med["three-term"]))

    lines = [
        "# gnuplot script; render with: gnuplot -p <this file>",
        f"set title '{title}'",
        "set xlabel 'm (matrix order 2m+1)'",
        "set ylabel 'median time [ms]'",
        "set key left top",
        "set grid",
    ]
    plots = []
    for n, (key, label, data) in enumerate(series):
        block = f"$s{n}"
        lines.append(f"{block} << EOD")
        lines.extend(f"{m} {v / 1e6:.6f}" for m, v in sorted(data.items()))
        lines.append("EOD")
        plots.append(f"{block} using 1:2 with linespoints {_SERIES_STYLE[key]} title '{label}'")
    if plots:
        lines.append("plot " + ", \\\n     ".join(plots))
    else:
        lines.append("plot 1/0 notitle")
    return "\n".join(lines) + "\n"


def emit_plot_script_from_csv(csv_path: Path | str) -> str:
    return emit_plot_script(read_csv(csv_path))
