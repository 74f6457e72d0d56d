"""Linear superiorization workbench.

Generates linear programs with exactly prescribed condition numbers,
solves them by feasibility seeking with bounded negative-gradient
perturbations, and benchmarks the results against LP ground truth.
"""

from .densela import (
    RankDeficiencyError,
    estimate_condition_number,
    matvec,
    random_semi_orthogonal,
)
from .feasibility import HalfspaceSystem, max_violation, project_halfspace, sweep
from .harness import (
    BenchmarkRecord,
    GridSpec,
    cell_seed,
    parse_grid_file,
    preset_grid,
    run_grid,
)
from .oracle import CapacityError, OracleResult, enumerate_vertices_optimum, simplex_solve
from .plots import emit_plots
from .probgen import (
    FormatError,
    LpInstance,
    SpectrumSpec,
    assemble,
    design_spectrum,
    export_mps,
    generate_instance,
    read_instance,
    write_instance,
)
from .superiorize import (
    IterateTrace,
    NumericalFailureError,
    ScheduleState,
    SuperiorizationParams,
    clip_box,
    perturb,
    step_size_schedule,
    superiorize,
    write_trace_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkRecord",
    "CapacityError",
    "FormatError",
    "GridSpec",
    "HalfspaceSystem",
    "IterateTrace",
    "LpInstance",
    "NumericalFailureError",
    "OracleResult",
    "RankDeficiencyError",
    "ScheduleState",
    "SpectrumSpec",
    "SuperiorizationParams",
    "assemble",
    "cell_seed",
    "clip_box",
    "design_spectrum",
    "emit_plots",
    "enumerate_vertices_optimum",
    "estimate_condition_number",
    "export_mps",
    "generate_instance",
    "matvec",
    "max_violation",
    "parse_grid_file",
    "perturb",
    "preset_grid",
    "project_halfspace",
    "random_semi_orthogonal",
    "read_instance",
    "run_grid",
    "simplex_solve",
    "step_size_schedule",
    "superiorize",
    "sweep",
    "write_instance",
    "write_trace_csv",
]
