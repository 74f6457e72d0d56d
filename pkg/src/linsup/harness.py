"""Experiment grid runner: dimensions x condition numbers x seeds x algorithms.

Every cell gets its instance from a seed derived by hashing the cell
coordinates, so extending the grid never changes existing cells.  Cells
are independent and may run in parallel; the record CSV is sorted by
cell key before writing, which makes outputs identical regardless of
worker count.
"""

from __future__ import annotations

import hashlib
import importlib.util
import os
import shutil
import subprocess
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .densela import estimate_condition_number
from .feasibility import HalfspaceSystem, max_violation
from .oracle import simplex_solve
from .probgen import generate_instance, read_instance, write_instance, export_mps
from .superiorize import (
    IterateTrace,
    SuperiorizationParams,
    TraceSample,
    superiorize,
    write_trace_csv,
)

__all__ = [
    "GridSpec",
    "BenchmarkRecord",
    "cell_seed",
    "cell_key",
    "run_grid",
    "parse_grid_file",
    "preset_grid",
    "read_benchmark_csv",
    "read_trace_csv",
    "BENCH_HEADER",
    "CANONICAL_HEADER",
    "PRESET_KAPPAS",
    "DESK_DIMS",
    "PAPER_DIMS",
]

BENCH_HEADER = (
    "m,n,kappa,seed,algorithm,runtime_seconds,objective_final,"
    "max_violation_final,iterations,termination_reason"
)
CANONICAL_HEADER = (
    "m,n,kappa,seed,algorithm,objective_final,"
    "max_violation_final,iterations,termination_reason"
)

PAPER_DIMS = ((80, 100), (200, 250), (400, 500), (800, 1000), (2000, 2500))
DESK_DIMS = PAPER_DIMS[:3]
PRESET_KAPPAS = (1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6)

_BUILTIN_ALGORITHMS = ("linsup", "ams-only", "simplex-oracle")

# Instance kappa is re-estimated before each solve; larger relative
# mismatch marks the cell failed instead of solving garbage.
KAPPA_RECHECK_RTOL = 1e-4


@dataclass(frozen=True)
class GridSpec:
    dims: tuple[tuple[int, int], ...]
    kappas: tuple[float, ...]
    seeds: tuple[int, ...]
    algorithms: tuple[str, ...]
    params: SuperiorizationParams

    def __post_init__(self):
        if not self.dims or not self.kappas or not self.seeds or not self.algorithms:
            raise ValueError("dims, kappas, seeds and algorithms must be non-empty")
        for m, n in self.dims:
            if m < 2 or n < 2:
                raise ValueError(f"dimensions must be at least 2x2, got {m}x{n}")
        for kappa in self.kappas:
            if not kappa >= 1.0:
                raise ValueError(f"kappa must be >= 1, got {kappa}")
        for alg in self.algorithms:
            if alg not in _BUILTIN_ALGORITHMS and not (
                alg.startswith("bridge:") and len(alg) > len("bridge:")
            ):
                raise ValueError(f"unknown algorithm {alg!r}")


@dataclass(frozen=True)
class BenchmarkRecord:
    m: int
    n: int
    kappa: float
    seed: int
    algorithm: str
    runtime_seconds: float
    objective_final: float
    max_violation_final: float
    iterations: int
    termination_reason: str


def cell_seed(base_seed: int, m: int, n: int, kappa_index: int, seed_index: int) -> int:
    """Stable 64-bit per-cell seed.

    SHA-256 over the ASCII string ``linsup-grid:<base>:<m>:<n>:<ki>:<si>``,
    first 8 digest bytes read little-endian.  Grid rows added later never
    shift the seeds of existing cells.
    """
    text = f"linsup-grid:{base_seed}:{m}:{n}:{kappa_index}:{seed_index}"
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "little")


def _fmt_kappa(kappa: float) -> str:
    return f"{kappa:g}"


def cell_key(m: int, n: int, kappa: float, seed: int, algorithm: str) -> str:
    alg = algorithm.replace(":", "-")
    return f"m{m}_n{n}_kappa{_fmt_kappa(kappa)}_seed{seed}_{alg}"


def instance_filename(m: int, n: int, kappa: float, seed: int) -> str:
    return f"m{m}_n{n}_kappa{_fmt_kappa(kappa)}_seed{seed}.lsup"


def _fmt_float(v: float) -> str:
    return f"{float(v):.17g}"


def _record_row(rec: BenchmarkRecord, canonical: bool) -> str:
    fields = [
        str(rec.m),
        str(rec.n),
        _fmt_float(rec.kappa),
        str(rec.seed),
        rec.algorithm,
    ]
    if not canonical:
        fields.append(_fmt_float(rec.runtime_seconds))
    fields += [
        _fmt_float(rec.objective_final),
        _fmt_float(rec.max_violation_final),
        str(rec.iterations),
        rec.termination_reason,
    ]
    return ",".join(fields)


def write_benchmark_csv(records, path, canonical: bool = False) -> None:
    """Write records sorted by cell key; atomic via rename."""
    ordered = sorted(records, key=lambda r: (r.m, r.n, r.kappa, r.seed, r.algorithm))
    header = CANONICAL_HEADER if canonical else BENCH_HEADER
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(header + "\n")
        for rec in ordered:
            fh.write(_record_row(rec, canonical) + "\n")
    os.replace(tmp, path)


def read_benchmark_csv(path) -> list[BenchmarkRecord]:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != BENCH_HEADER:
        raise ValueError(f"{path} does not carry the benchmark CSV header")
    records = []
    for ln in lines[1:]:
        if not ln:
            continue
        parts = ln.split(",")
        records.append(
            BenchmarkRecord(
                m=int(parts[0]),
                n=int(parts[1]),
                kappa=float(parts[2]),
                seed=int(parts[3]),
                algorithm=parts[4],
                runtime_seconds=float(parts[5]),
                objective_final=float(parts[6]),
                max_violation_final=float(parts[7]),
                iterations=int(parts[8]),
                termination_reason=parts[9],
            )
        )
    return records


def read_trace_csv(path) -> list[TraceSample]:
    from .superiorize import TRACE_HEADER

    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != TRACE_HEADER:
        raise ValueError(f"{path} does not carry the trace CSV header")
    samples = []
    for ln in lines[1:]:
        if not ln:
            continue
        p = ln.split(",")
        samples.append(TraceSample(int(p[0]), float(p[1]), float(p[2]), float(p[3]), float(p[4])))
    return samples


def _bridge_command() -> list[str] | None:
    exe = shutil.which("lpbridge")
    if exe is not None:
        return [exe]
    if importlib.util.find_spec("lpbridge") is not None:
        return [sys.executable, "-m", "lpbridge"]
    return None


def _failure_record(m, n, kappa, seed, algorithm, reason) -> BenchmarkRecord:
    return BenchmarkRecord(
        m=m,
        n=n,
        kappa=kappa,
        seed=seed,
        algorithm=algorithm,
        runtime_seconds=0.0,
        objective_final=float("nan"),
        max_violation_final=float("nan"),
        iterations=0,
        termination_reason=reason,
    )


def _terminal_trace(runtime, violation, objective, iterations) -> IterateTrace:
    return IterateTrace(
        samples=[TraceSample(iterations, runtime, violation, objective, 0.0)],
        termination_reason="terminal-only",
    )


def _run_cell(job) -> BenchmarkRecord:
    """Solve one (instance, algorithm) cell.  Must stay picklable."""
    (instance_path, m, n, kappa, seed, algorithm, params, trace_path) = job
    try:
        inst = read_instance(instance_path)
        estimated = estimate_condition_number(inst.a)
        if abs(estimated - kappa) / kappa > KAPPA_RECHECK_RTOL:
            return _failure_record(m, n, kappa, seed, algorithm, "kappa-mismatch")

        if algorithm in ("linsup", "ams-only"):
            run_params = params if algorithm == "linsup" else replace(params, eta0=0.0)
            x, trace = superiorize(inst, run_params)
            write_trace_csv(trace, trace_path)
            last = trace.samples[-1]
            return BenchmarkRecord(
                m=m,
                n=n,
                kappa=kappa,
                seed=seed,
                algorithm=algorithm,
                runtime_seconds=last.elapsed,
                objective_final=last.objective,
                max_violation_final=last.max_violation,
                iterations=last.iteration,
                termination_reason=trace.termination_reason,
            )

        if algorithm == "simplex-oracle":
            start = time.perf_counter()
            result = simplex_solve(inst)
            runtime = time.perf_counter() - start
            if result.status != "optimal":
                return _failure_record(m, n, kappa, seed, algorithm, result.status)
            system = HalfspaceSystem(inst.a, inst.b, params.overshoot)
            violation = max_violation(result.x_opt, system)
            write_trace_csv(
                _terminal_trace(runtime, violation, result.objective, result.pivot_count),
                trace_path,
            )
            return BenchmarkRecord(
                m=m,
                n=n,
                kappa=kappa,
                seed=seed,
                algorithm=algorithm,
                runtime_seconds=runtime,
                objective_final=result.objective,
                max_violation_final=violation,
                iterations=result.pivot_count,
                termination_reason="optimal",
            )

        if algorithm.startswith("bridge:"):
            return _run_bridge_cell(job)
        return _failure_record(m, n, kappa, seed, algorithm, "unknown-algorithm")
    except Exception as exc:  # per-cell isolation: the grid must go on
        print(f"cell {cell_key(m, n, kappa, seed, algorithm)} failed: {exc}", file=sys.stderr)
        return _failure_record(m, n, kappa, seed, algorithm, "error")


def _run_bridge_cell(job) -> BenchmarkRecord:
    (instance_path, m, n, kappa, seed, algorithm, params, trace_path) = job
    solver = algorithm.split(":", 1)[1]
    command = _bridge_command()
    if command is None:
        return _failure_record(m, n, kappa, seed, algorithm, "bridge-unavailable")
    mps_path = os.path.splitext(instance_path)[0] + ".mps"
    if not os.path.exists(mps_path):
        export_mps(read_instance(instance_path), mps_path)
    record_path = os.path.splitext(trace_path)[0] + ".record.csv"
    argv = command + [
        "--solver",
        solver,
        "--mps",
        mps_path,
        "--record-out",
        record_path,
        "--trace-out",
        trace_path,
        "--kappa",
        _fmt_float(kappa),
        "--seed",
        str(seed),
    ]
    if params.time_limit is not None:
        argv += ["--time-limit", str(params.time_limit)]
    proc = subprocess.run(argv, capture_output=True, text=True)
    if not os.path.exists(record_path):
        print(
            f"bridge produced no record (exit {proc.returncode}): {proc.stderr.strip()}",
            file=sys.stderr,
        )
        return _failure_record(m, n, kappa, seed, algorithm, "bridge-error")
    rows = read_benchmark_csv(record_path)
    if len(rows) != 1:
        return _failure_record(m, n, kappa, seed, algorithm, "bridge-error")
    return rows[0]


def run_grid(spec: GridSpec, out_dir, workers: int = 1) -> list[BenchmarkRecord]:
    """Run every grid cell, writing instances, traces and benchmark CSVs.

    Returns the records (sorted by cell key).  Instance files are shared
    by all algorithms of a cell coordinate.  Failures of single cells are
    recorded in ``termination_reason`` and never abort the grid.
    """
    out_dir = os.fspath(out_dir)
    inst_dir = os.path.join(out_dir, "instances")
    trace_dir = os.path.join(out_dir, "traces")
    os.makedirs(inst_dir, exist_ok=True)
    os.makedirs(trace_dir, exist_ok=True)

    jobs = []
    for m, n in spec.dims:
        for ki, kappa in enumerate(spec.kappas):
            for si, base_seed in enumerate(spec.seeds):
                seed = cell_seed(base_seed, m, n, ki, si)
                instance_path = os.path.join(inst_dir, instance_filename(m, n, kappa, seed))
                if not os.path.exists(instance_path):
                    write_instance(generate_instance(m, n, kappa, seed), instance_path)
                for algorithm in spec.algorithms:
                    trace_path = os.path.join(
                        trace_dir, cell_key(m, n, kappa, seed, algorithm) + ".csv"
                    )
                    jobs.append(
                        (instance_path, m, n, kappa, seed, algorithm, spec.params, trace_path)
                    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_cell, jobs))
    else:
        records = [_run_cell(job) for job in jobs]

    write_benchmark_csv(records, os.path.join(out_dir, "benchmark.csv"))
    write_benchmark_csv(
        records, os.path.join(out_dir, "benchmark_canonical.csv"), canonical=True
    )
    return sorted(records, key=lambda r: (r.m, r.n, r.kappa, r.seed, r.algorithm))


def _parse_params(pairs: list[str]) -> SuperiorizationParams:
    kwargs = {}
    alias = {"r": "overshoot"}
    int_fields = {"tau_reset", "max_iterations"}
    for item in pairs:
        key, _, value = item.partition("=")
        if not _:
            raise ValueError(f"PARAMS entries must be key=value, got {item!r}")
        key = alias.get(key.strip(), key.strip())
        value = value.strip()
        if key in int_fields:
            kwargs[key] = int(value)
        elif key == "time_limit":
            kwargs[key] = float(value)
        elif key in ("epsilon", "alpha", "eta0", "overshoot"):
            kwargs[key] = float(value)
        else:
            raise ValueError(f"unknown parameter {key!r}")
    return SuperiorizationParams(**kwargs)


def parse_grid_file(path) -> GridSpec:
    """Parse the line-oriented grid format.

    Sections DIMS, KAPPAS, SEEDS, ALGORITHMS and PARAMS (key=value), in
    any order; ``#`` starts a comment.  DIMS lines carry "m n" pairs; the
    other sections are whitespace-separated tokens.
    """
    sections: dict[str, list[str]] = {}
    current: str | None = None
    known = ("DIMS", "KAPPAS", "SEEDS", "ALGORITHMS", "PARAMS")
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line in known:
                current = line
                sections.setdefault(current, [])
                continue
            if current is None:
                raise ValueError(f"{path}:{lineno}: content before any section header")
            sections[current].append(line)

    missing = [s for s in ("DIMS", "KAPPAS", "SEEDS", "ALGORITHMS") if s not in sections]
    if missing:
        raise ValueError(f"{path}: missing sections {missing}")

    dims = []
    for line in sections["DIMS"]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"DIMS lines must be 'm n', got {line!r}")
        dims.append((int(parts[0]), int(parts[1])))
    kappas = [float(tok) for line in sections["KAPPAS"] for tok in line.split()]
    seeds = [int(tok) for line in sections["SEEDS"] for tok in line.split()]
    algorithms = [tok for line in sections["ALGORITHMS"] for tok in line.split()]
    params = _parse_params(sections.get("PARAMS", []))
    return GridSpec(
        dims=tuple(dims),
        kappas=tuple(kappas),
        seeds=tuple(seeds),
        algorithms=tuple(algorithms),
        params=params,
    )


def preset_grid(name: str) -> GridSpec:
    """Built-in grids: ``desk`` (first three dims) and ``paper`` (all five)."""
    if name == "desk":
        return GridSpec(
            dims=DESK_DIMS,
            kappas=PRESET_KAPPAS,
            seeds=(0,),
            algorithms=("linsup", "ams-only"),
            params=SuperiorizationParams(),
        )
    if name == "paper":
        return GridSpec(
            dims=PAPER_DIMS,
            kappas=PRESET_KAPPAS,
            seeds=(0, 1, 2),
            algorithms=("linsup", "ams-only"),
            params=SuperiorizationParams(),
        )
    raise ValueError(f"unknown preset {name!r} (expected 'desk' or 'paper')")
