"""Command-line entry points: gen, cond, solve, export-mps, bench, plot."""

from __future__ import annotations

import argparse
import sys

from .densela import estimate_condition_number
from .harness import (
    parse_grid_file,
    preset_grid,
    read_benchmark_csv,
    run_grid,
)
from .probgen import export_mps, generate_instance, read_instance, write_instance
from .superiorize import SuperiorizationParams, superiorize, write_trace_csv


def _add_param_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=1e-8)
    p.add_argument("--alpha", type=float, default=0.99)
    p.add_argument("--eta0", type=float, default=10.0)
    p.add_argument("--overshoot", "--r", type=float, default=1e-3, dest="overshoot")
    p.add_argument("--tau-reset", type=int, default=20)
    p.add_argument("--max-iterations", type=int, default=100_000)
    p.add_argument("--time-limit", type=float, default=None)


def _params_from_args(args) -> SuperiorizationParams:
    return SuperiorizationParams(
        epsilon=args.epsilon,
        alpha=args.alpha,
        eta0=args.eta0,
        overshoot=args.overshoot,
        tau_reset=args.tau_reset,
        max_iterations=args.max_iterations,
        time_limit=args.time_limit,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linsup",
        description="Linear superiorization workbench for condition-number studies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--s", type=float, default=10.0, help="singular value scale (sigma_q = 1/s)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("cond", help="estimate the condition number of an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("solve", help="run the superiorization loop on an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--trace-out", default=None)
    _add_param_args(p)

    p = sub.add_parser("export-mps", help="export an instance as an MPS file")
    p.add_argument("--instance", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="run a benchmark grid")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--grid-file")
    group.add_argument("--preset", choices=("desk", "paper"))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("plot", help="emit SVG panels from benchmark output")
    p.add_argument("--records", required=True, help="path to benchmark.csv")
    p.add_argument("--traces", required=True, help="directory with trace CSVs")
    p.add_argument("--out-dir", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "gen":
        inst = generate_instance(args.m, args.n, args.kappa, args.seed, args.s)
        write_instance(inst, args.out)
        print(f"wrote {args.out} ({args.m}x{args.n}, kappa={args.kappa:g}, seed={args.seed})")
        return 0

    if args.command == "cond":
        inst = read_instance(args.instance)
        est = estimate_condition_number(inst.a, args.tol)
        print(f"estimated kappa: {est:.12g} (designed {inst.meta.kappa:.12g})")
        return 0

    if args.command == "solve":
        inst = read_instance(args.instance)
        x, trace = superiorize(inst, _params_from_args(args))
        last = trace.samples[-1]
        if args.trace_out:
            write_trace_csv(trace, args.trace_out)
        print(f"termination: {trace.termination_reason}")
        print(f"iterations: {last.iteration}")
        print(f"runtime_seconds: {last.elapsed:.6g}")
        print(f"max_violation: {last.max_violation:.9g}")
        print(f"objective: {last.objective:.12g}")
        return 0 if trace.termination_reason == "converged" else 1

    if args.command == "export-mps":
        export_mps(read_instance(args.instance), args.out)
        print(f"wrote {args.out}")
        return 0

    if args.command == "bench":
        spec = parse_grid_file(args.grid_file) if args.grid_file else preset_grid(args.preset)
        records = run_grid(spec, args.out_dir, workers=args.workers)
        failed = [r for r in records if r.termination_reason not in ("converged", "optimal")]
        print(f"{len(records)} cells -> {args.out_dir}/benchmark.csv")
        for rec in failed:
            print(
                f"  cell m={rec.m} n={rec.n} kappa={rec.kappa:g} seed={rec.seed} "
                f"{rec.algorithm}: {rec.termination_reason}",
                file=sys.stderr,
            )
        return 0

    if args.command == "plot":
        from .plots import emit_plots

        records = read_benchmark_csv(args.records)
        warnings = emit_plots(records, args.traces, args.out_dir)
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        print(f"plots -> {args.out_dir}")
        return 0

    raise AssertionError(f"unhandled command {args.command}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
