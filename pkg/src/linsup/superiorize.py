"""The superiorization driver.

Each iteration takes a step of size ``eta_k`` along the normalized
negative objective gradient ``-c/||c||``, runs one cyclic projection
sweep over the rows, and clips the iterate into the box.  Step sizes
decay geometrically by ``alpha`` within a period and are reset to
``eta0 * alpha**rho`` every ``tau_reset`` iterations, ``rho`` counting
prior resets.  The run stops once the iterate is feasible up to
``epsilon`` and the relative change from the previous iterate is below
``epsilon``; with ``eta0 = 0`` the same loop is the unsuperiorized
feasibility-seeking baseline.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .densela import as_vector
from .feasibility import HalfspaceSystem, max_violation, sweep

__all__ = [
    "NumericalFailureError",
    "SuperiorizationParams",
    "ScheduleState",
    "TraceSample",
    "IterateTrace",
    "step_size_schedule",
    "perturb",
    "clip_box",
    "superiorize",
    "write_trace_csv",
    "TERMINATION_CONVERGED",
    "TERMINATION_ITERATION_CAP",
    "TERMINATION_TIME_LIMIT",
    "TRACE_HEADER",
]

TERMINATION_CONVERGED = "converged"
TERMINATION_ITERATION_CAP = "iteration-cap"
TERMINATION_TIME_LIMIT = "time-limit"

TRACE_HEADER = "iteration,elapsed_seconds,max_violation,objective,eta"

# Above this row count traces keep every 10th iteration plus first/last.
_DENSE_TRACE_MAX_ROWS = 1000


class NumericalFailureError(RuntimeError):
    """An iterate became non-finite."""


@dataclass(frozen=True)
class SuperiorizationParams:
    """Tunables of the superiorization loop (defaults match the usual setup)."""

    epsilon: float = 1e-8
    alpha: float = 0.99
    eta0: float = 10.0
    overshoot: float = 1e-3
    tau_reset: int = 20
    max_iterations: int = 100_000
    time_limit: float | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.eta0 >= 0.0:
            raise ValueError(f"eta0 must be nonnegative, got {self.eta0}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.tau_reset < 1:
            raise ValueError(f"tau_reset must be >= 1, got {self.tau_reset}")
        if not self.overshoot > 0.0:
            raise ValueError(f"overshoot must be positive, got {self.overshoot}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.time_limit is not None and not self.time_limit >= 0.0:
            raise ValueError(f"time_limit must be nonnegative, got {self.time_limit}")


@dataclass(frozen=True)
class ScheduleState:
    tau: int = 0
    rho: int = 0


def step_size_schedule(
    eta: float, state: ScheduleState, params: SuperiorizationParams
) -> tuple[float, ScheduleState]:
    """Advance the step size by one iteration.

    Within a period the size shrinks by ``alpha``; on the tau_reset-th
    iteration of a period the reset counter increments and the size
    restarts at ``eta0 * alpha**rho``.
    """
    if not 0 <= state.tau < params.tau_reset:
        raise ValueError(f"inconsistent schedule state tau={state.tau}")
    tau = state.tau + 1
    if tau < params.tau_reset:
        return eta * params.alpha, ScheduleState(tau=tau, rho=state.rho)
    rho = state.rho + 1
    return params.eta0 * params.alpha**rho, ScheduleState(tau=0, rho=rho)


def perturb(x, c, eta: float) -> np.ndarray:
    """Move ``x`` by ``eta`` along the normalized negative gradient of <c, .>."""
    if not eta >= 0.0:
        raise ValueError(f"eta must be nonnegative, got {eta}")
    c = np.asarray(c, dtype=np.float64)
    norm = np.linalg.norm(c)
    if norm == 0.0:
        raise ValueError("c must be nonzero")
    return x - (eta / norm) * c


def clip_box(x, lower, upper) -> np.ndarray:
    """Componentwise clamp of ``x`` into ``[lower, upper]``."""
    if np.any(np.asarray(lower) > np.asarray(upper)):
        raise ValueError("lower bound exceeds upper bound in some component")
    return np.clip(x, lower, upper)


@dataclass(frozen=True)
class TraceSample:
    iteration: int
    elapsed: float
    max_violation: float
    objective: float
    eta: float


@dataclass
class IterateTrace:
    """Per-iteration time series recorded at every loop-guard evaluation."""

    samples: list[TraceSample]
    termination_reason: str


def write_trace_csv(trace: IterateTrace, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(TRACE_HEADER + "\n")
        for s in trace.samples:
            fh.write(
                f"{s.iteration},{s.elapsed:.17g},{s.max_violation:.17g},"
                f"{s.objective:.17g},{s.eta:.17g}\n"
            )


def superiorize(inst, params: SuperiorizationParams | None = None, x0=None):
    """Run the superiorization loop on an LP instance.

    Returns ``(solution, trace)``.  ``x0`` defaults to the all-ones
    vector.  The clock starts after the constraint system is set up, so
    elapsed times cover only the iterative loop.
    """
    if params is None:
        params = SuperiorizationParams()
    system = HalfspaceSystem(inst.a, inst.b, params.overshoot)
    c = as_vector(inst.c, "c")
    if np.linalg.norm(c) == 0.0:
        raise ValueError("c must be nonzero")
    lower = as_vector(inst.lower, "lower")
    upper = as_vector(inst.upper, "upper")
    if np.any(lower > upper):
        raise ValueError("lower bound exceeds upper bound in some component")
    n = system.n
    if x0 is None:
        x = np.ones(n)
    else:
        x = as_vector(x0, "x0").copy()
        if x.shape != (n,):
            raise ValueError(f"x0 must have length {n}, got {x.shape[0]}")

    x_prev = x + 1.0
    eta = params.eta0
    state = ScheduleState()
    epsilon = params.epsilon
    stride = 1 if system.m <= _DENSE_TRACE_MAX_ROWS else 10
    samples: list[TraceSample] = []
    k = 0
    start = time.perf_counter()
    while True:
        violation = max_violation(x, system)
        objective = float(c @ x)
        elapsed = time.perf_counter() - start
        denom = max(float(np.linalg.norm(x_prev)), 1e-12)
        rel_change = float(np.linalg.norm(x - x_prev)) / denom

        reason = None
        if violation < epsilon and rel_change < epsilon:
            reason = TERMINATION_CONVERGED
        elif k >= params.max_iterations:
            reason = TERMINATION_ITERATION_CAP
        elif params.time_limit is not None and elapsed >= params.time_limit:
            reason = TERMINATION_TIME_LIMIT

        if reason is not None or k % stride == 0:
            samples.append(TraceSample(k, elapsed, violation, objective, eta))
        if reason is not None:
            return x, IterateTrace(samples=samples, termination_reason=reason)

        x_prev = x
        x = perturb(x, c, eta)
        x = sweep(x, system)
        x = clip_box(x, lower, upper)
        if not np.isfinite(x).all():
            raise NumericalFailureError(f"non-finite iterate at iteration {k + 1}")
        eta, state = step_size_schedule(eta, state, params)
        k += 1
