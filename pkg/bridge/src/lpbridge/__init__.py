"""External LP solver bridge for the linear superiorization workbench."""

from .mps import LpProblem, MpsFormatError, parse_mps
from .runner import (
    EXIT_FORMAT_ERROR,
    EXIT_OK,
    EXIT_SOLVER_FAILED,
    EXIT_SOLVER_UNAVAILABLE,
    RECORD_HEADER,
    TRACE_HEADER,
    BridgeConfig,
    run_external,
)
from .solvers import SolveOutcome, available_solvers

__version__ = "0.1.0"

__all__ = [
    "BridgeConfig",
    "EXIT_FORMAT_ERROR",
    "EXIT_OK",
    "EXIT_SOLVER_FAILED",
    "EXIT_SOLVER_UNAVAILABLE",
    "LpProblem",
    "MpsFormatError",
    "RECORD_HEADER",
    "SolveOutcome",
    "TRACE_HEADER",
    "available_solvers",
    "parse_mps",
    "run_external",
]
