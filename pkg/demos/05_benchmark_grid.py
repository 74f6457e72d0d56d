"""A miniature benchmark grid with SVG plot emission.

Runs linsup and its unperturbed baseline over a small dimension/kappa
grid, then renders the four panel types into demos_out/: violation and
objective against runtime per (dim, kappa), and runtime/objective
against kappa (log axis) per dimension.  Rerunning reproduces the CSVs
byte for byte; see benchmark_canonical.csv for the runtime-free form.
"""

import pathlib

from linsup import GridSpec, emit_plots, run_grid
from linsup.harness import read_benchmark_csv
from linsup.superiorize import SuperiorizationParams

out = pathlib.Path(__file__).resolve().parent / "demos_out"
spec = GridSpec(
    dims=((20, 25), (40, 50)),
    kappas=(1.0, 100.0, 1e4),
    seeds=(0, 1),
    algorithms=("linsup", "ams-only"),
    params=SuperiorizationParams(epsilon=1e-6, max_iterations=30_000),
)

records = run_grid(spec, out, workers=2)
print(f"{len(records)} cells written under {out}")
for rec in read_benchmark_csv(out / "benchmark.csv")[:6]:
    print(
        f"  {rec.m}x{rec.n} kappa={rec.kappa:g} seed={rec.seed} {rec.algorithm:>9}: "
        f"obj={rec.objective_final:10.3f} viol={rec.max_violation_final:9.2e} "
        f"iters={rec.iterations} ({rec.termination_reason})"
    )

warnings = emit_plots(records, out / "traces", out / "plots")
svgs = sorted(p.name for p in (out / "plots").glob("*.svg"))
print(f"\n{len(svgs)} SVG panels emitted, {len(warnings)} warnings:")
for name in svgs:
    print(f"  plots/{name}")
