"""Run one external solver on one MPS file and emit workbench-schema CSVs.

The record and trace headers below are the wire contract with the
benchmark harness and must match it byte for byte.  All reported metrics
are recomputed here from the parsed problem data and the returned point;
solver-reported residuals are never used.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

import numpy as np

from .mps import MpsFormatError, parse_mps
from .solvers import available_solvers

__all__ = [
    "BridgeConfig",
    "run_external",
    "EXIT_OK",
    "EXIT_FORMAT_ERROR",
    "EXIT_SOLVER_UNAVAILABLE",
    "EXIT_SOLVER_FAILED",
    "RECORD_HEADER",
    "TRACE_HEADER",
]

EXIT_OK = 0
EXIT_FORMAT_ERROR = 2
EXIT_SOLVER_UNAVAILABLE = 3
EXIT_SOLVER_FAILED = 4

RECORD_HEADER = (
    "m,n,kappa,seed,algorithm,runtime_seconds,objective_final,"
    "max_violation_final,iterations,termination_reason"
)
TRACE_HEADER = "iteration,elapsed_seconds,max_violation,objective,eta"


@dataclass(frozen=True)
class BridgeConfig:
    solver: str
    mps_path: str
    record_out: str
    trace_out: str | None = None
    time_limit: float | None = None
    kappa: float = float("nan")
    seed: int = 0


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _write_record(config, m, n, runtime, objective, violation, iterations, reason):
    row = ",".join(
        [
            str(m),
            str(n),
            _fmt(config.kappa),
            str(config.seed),
            f"bridge:{config.solver}",
            _fmt(runtime),
            _fmt(objective),
            _fmt(violation),
            str(iterations),
            reason,
        ]
    )
    with open(config.record_out, "w", encoding="ascii") as fh:
        fh.write(RECORD_HEADER + "\n" + row + "\n")


def _write_trace(path, iterations, runtime, violation, objective):
    # scipy's HiGHS interface exposes no per-iteration callback, so the
    # trace carries the terminal sample only.
    with open(path, "w", encoding="ascii") as fh:
        fh.write(TRACE_HEADER + "\n")
        fh.write(f"{iterations},{_fmt(runtime)},{_fmt(violation)},{_fmt(objective)},0\n")


def run_external(config: BridgeConfig) -> int:
    """Solve the MPS file with the configured backend; returns the exit code."""
    try:
        problem = parse_mps(config.mps_path)
    except (OSError, MpsFormatError) as exc:
        print(f"cannot read {config.mps_path}: {exc}", file=sys.stderr)
        return EXIT_FORMAT_ERROR

    m, n = problem.a.shape
    solvers = available_solvers()
    if config.solver not in solvers:
        print(
            f"solver {config.solver!r} is not available "
            f"(registered: {sorted(solvers) or 'none'})",
            file=sys.stderr,
        )
        _write_record(config, m, n, 0.0, float("nan"), float("nan"), 0, "solver-unavailable")
        return EXIT_SOLVER_UNAVAILABLE

    start = time.perf_counter()
    outcome = solvers[config.solver](problem, config.time_limit)
    runtime = time.perf_counter() - start

    if outcome.x is not None:
        objective = float(problem.c @ outcome.x)
        violation = (
            float(np.max(problem.a @ outcome.x - problem.b)) if m else float("-inf")
        )
    else:
        objective = float("nan")
        violation = float("nan")

    _write_record(
        config, m, n, runtime, objective, violation, outcome.iterations, outcome.status
    )
    if config.trace_out:
        _write_trace(config.trace_out, outcome.iterations, runtime, violation, objective)
    return EXIT_OK if outcome.status == "optimal" else EXIT_SOLVER_FAILED
