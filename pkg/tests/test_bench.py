import pytest

from ghostosd import bench
from ghostosd.bench import BenchConfig, BenchRecord, ChecksumMismatch, checksum, emit_plot_script
from ghostosd.semiring import EPS, MaxPlusMatrix


def test_checksum_format():
    M = MaxPlusMatrix.from_rows([[1, EPS], [-3, EPS]])
    assert checksum(M) == f"{(-2) % (1 << 64):016x}:2"


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig((2,), reps=2)
    with pytest.raises(ValueError):
        BenchConfig((2,), warmup=0)
    with pytest.raises(ValueError):
        BenchConfig((2,), beta=0)
    with pytest.raises(ValueError):
        BenchConfig((2,), methods=("three-term",))
    with pytest.raises(ValueError):
        BenchConfig((2,), target="Q")
    with pytest.raises(ValueError):
        BenchConfig((1,))
    assert BenchConfig((3,)).k_max(3) == 6
    assert BenchConfig((3,), beta=2).k_max(3) == 13


def test_run_bench_and_csv_round_trip(tmp_path):
    out = tmp_path / "r.csv"
    recs = bench.run_bench(BenchConfig((2, 3), seeds=(0, 1), out=out))
    assert len(recs) == 8
    assert bench.read_csv(out) == recs
    assert out.read_text().splitlines()[0] == ",".join(bench.CSV_COLUMNS)
    for m in (2, 3):
        sums = {r.checksum for r in recs if r.m == m and r.seed == 0}
        assert len(sums) == 1


def test_d_target_has_three_methods():
    recs = bench.run_bench(BenchConfig((2,), target="D", methods=bench.D_METHODS, beta=2))
    assert [r.method for r in recs] == list(bench.D_METHODS)
    assert all(r.k_max == 9 for r in recs)


def test_checksum_gate_aborts(monkeypatch):
    real = bench.workloads

    def broken(config, H):
        work = real(config, H)
        work["ghost"] = lambda: H.dense
        return work

    monkeypatch.setattr(bench, "workloads", broken)
    with pytest.raises(ChecksumMismatch):
        bench.run_bench(BenchConfig((2,)))


def test_parse_csv_rejects_missing_columns():
    with pytest.raises(ValueError):
        bench.parse_csv("m,seed\n2,0\n")


def test_median_by_m():
    recs = [BenchRecord(2, s, "naive", 4, 3, t, "x") for s, t in enumerate((10, 30, 20))]
    assert bench.median_by_m(recs) == {"naive": {2: 20}}


def _recs(methods):
    return [BenchRecord(m, 0, meth, 2 * m, 3, (i + 1) * 1000 * m, "x")
            for m in (2, 4) for i, meth in enumerate(methods)]


def test_plot_script_a_sweep():
    text = emit_plot_script(_recs(("naive", "ghost")))
    assert "t1 naive" in text and "t2 ghost" in text and "t1 - t2" in text
    assert "'red'" in text and "'blue'" in text
    assert text.count("EOD") == 6


def test_plot_script_d_sweep():
    text = emit_plot_script(_recs(bench.D_METHODS))
    assert "t3 three-term" in text and "t2 decomposed" in text and "t1 - t2" not in text


def test_plot_script_empty():
    text = emit_plot_script([])
    assert "plot 1/0 notitle" in text


def test_time_median_runs_warmup_and_reps():
    calls = []
    bench.time_median_ns(lambda: calls.append(1), reps=3, warmup=2)
    assert len(calls) == 5
