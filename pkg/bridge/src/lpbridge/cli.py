"""The ``lpbridge`` command.

Exit codes: 0 solved to optimality, 2 unreadable/malformed MPS input,
3 solver not available, 4 solver finished without an optimal solution.
"""

from __future__ import annotations

import argparse
import sys

from .runner import BridgeConfig, run_external
from .solvers import available_solvers


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpbridge",
        description="Run an external LP solver on an exported MPS instance",
    )
    parser.add_argument("--solver", required=True, help="registered adapter name")
    parser.add_argument("--mps", required=True, help="MPS file to solve")
    parser.add_argument("--record-out", required=True, help="benchmark record CSV to write")
    parser.add_argument("--trace-out", default=None, help="trace CSV to write")
    parser.add_argument("--time-limit", type=float, default=None)
    parser.add_argument("--kappa", type=float, default=float("nan"), help="record metadata")
    parser.add_argument("--seed", type=int, default=0, help="record metadata")
    parser.add_argument(
        "--list-solvers", action="store_true", help="print available adapters and exit"
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_solvers:
        for name in sorted(available_solvers()):
            print(name)
        return 0
    config = BridgeConfig(
        solver=args.solver,
        mps_path=args.mps,
        record_out=args.record_out,
        trace_out=args.trace_out,
        time_limit=args.time_limit,
        kappa=args.kappa,
        seed=args.seed,
    )
    return run_external(config)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
