"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
3 I/O error, 4 benchmark checksum mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .ghost import ghost_power
from .honest import (
    HonestError, HonestMatrix, format_honest, from_dense, load_text, random_honest,
)
from .jetblack import (
    BudgetExceeded, RuleVariant, pattern_search, diagram_check_ca, diagram_check_poly,
)
from .semiring import FormatError, format_matrix, mat_power_naive
from .verify import run_verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO, EXIT_CHECKSUM = 0, 1, 2, 3, 4


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_gen(args) -> int:
    H = random_honest(args.m, args.seed)
    _write(format_honest(H) if args.compact else format_matrix(H.dense), args.out)
    return EXIT_OK


def cmd_power(args) -> int:
    loaded = load_text(Path(args.input).read_text())
    if args.method == "ghost":
        try:
            H = loaded if isinstance(loaded, HonestMatrix) else from_dense(loaded)
        except HonestError as exc:
            print(f"error: ghost method needs an honest matrix: {exc}", file=sys.stderr)
            return EXIT_USAGE
        X = ghost_power(H, args.k)
    else:
        M = loaded.dense if isinstance(loaded, HonestMatrix) else loaded
        X = mat_power_naive(M, args.k + 1)
    _write(format_matrix(X), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_verify(args.m_min, args.m_max, args.seeds, args.self_test, emit=lambda c: print(c, flush=True))
    failed = sum(c.status == "FAIL" for c in checks)
    print(f"SUMMARY {len(checks)} lines, {failed} failed")
    return EXIT_VERIFY if failed else EXIT_OK


def _bench(args, target: str, methods) -> int:
    config = bench.BenchConfig(
        m_values=tuple(range(args.m_min, args.m_max + 1, args.m_step)),
        seeds=tuple(range(args.seed, args.seed + args.seeds)),
        beta=args.beta,
        reps=args.reps,
        warmup=args.warmup,
        methods=tuple(methods),
        target=target,
        diag=getattr(args, "b", None),
        out=Path(args.csv) if args.csv else None,
    )
    records = bench.run_bench(
        config,
        progress=lambda r: print(f"m={r.m} seed={r.seed} {r.method}: {r.median_ns / 1e6:.3f} ms", file=sys.stderr),
    )
    if not args.csv:
        sys.stdout.write(bench.records_to_csv(records))
    if args.plot:
        Path(args.plot).write_text(bench.emit_plot_script(records))
    return EXIT_OK


def cmd_bench(args) -> int:
    return _bench(args, "A", args.method or bench.A_METHODS)


def cmd_decomp_bench(args) -> int:
    return _bench(args, "D", args.method or bench.D_METHODS)


def cmd_plot(args) -> int:
    _write(bench.emit_plot_script_from_csv(args.csv), args.out)
    return EXIT_OK


_VARIANTS = {v.value: v for v in RuleVariant}


def cmd_jetblack(args) -> int:
    H = random_honest(args.m, args.seed)
    print(f"# polynomial diagram m={args.m} seed={args.seed}: k | lhs-bits | rhs-bits | match")
    rep = diagram_check_poly(H)
    for line in rep.lines():
        print(line)
    variants = list(RuleVariant) if args.variant == "all" else [_VARIANTS[args.variant]]
    for v in variants:
        print(f"# CA diagram variant={v.value}: step | lhs-bits | rhs-bits | match")
        for line in diagram_check_ca(H, v).lines():
            print(line)
    if args.search:
        for v in variants:
            found = pattern_search(args.m, args.budget, v)
            print(f"# support-pattern search m={args.m} variant={v.value}: {len(found)} patterns satisfy the identity")
            for r in found:
                print(f"support {list(r.support)} | lhs {r.lhs} | rhs-trajectory {' '.join(r.rhs)}")
    return EXIT_OK if rep.passed else EXIT_VERIFY


def _bench_args(p: argparse.ArgumentParser, default_max: int) -> None:
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=default_max)
    p.add_argument("--m-step", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    p.add_argument("--beta", type=int, default=None, help="k_max = beta*(2m+1)-1 (default: k_max = 2m)")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--csv", default=None, help="write CSV here instead of stdout")
    p.add_argument("--plot", default=None, help="also write a gnuplot script here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghostosd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a random honest matrix")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--compact", action="store_true", help="compact 'honest v1' form instead of dense")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("power", help="compute X(k) = A^(k+1)")
    p.add_argument("--in", dest="input", required=True, help="matrix file (dense 'maxplus v1' or compact 'honest v1')")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("naive", "ghost"), default="ghost")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("verify", help="run every invariant suite against the brute-force oracles")
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--self-test", action="store_true", help="corrupt one oracle entry; must exit nonzero")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time naive vs ghost sweeps of A")
    _bench_args(p, 20)
    p.add_argument("--method", action="append", choices=bench.A_METHODS)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("decomp-bench", help="time naive, three-term and decomposed sweeps of D = B (+) A")
    _bench_args(p, 20)
    p.add_argument("--method", action="append", choices=bench.D_METHODS)
    p.add_argument("--b", type=int, default=None, help="diagonal weight of B (default: m)")
    p.set_defaults(func=cmd_decomp_bench)

    p = sub.add_parser("plot", help="turn a bench CSV into a gnuplot script")
    p.add_argument("--csv", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("jetblack", help="polynomial and cellular-automaton diagram checks")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=[*_VARIANTS, "all"], default="all")
    p.add_argument("--search", action="store_true", help="also run the support-pattern search")
    p.add_argument("--budget", type=int, default=1 << 15, help="max number of support patterns")
    p.set_defaults(func=cmd_jetblack)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HonestError, FormatError, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except bench.ChecksumMismatch as exc:
        print(f"checksum abort: {exc}", file=sys.stderr)
        return EXIT_CHECKSUM


if __name__ == "__main__":
    sys.exit(main())
