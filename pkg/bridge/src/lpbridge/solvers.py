"""Adapters around off-the-shelf LP solvers.

Each adapter takes an ``LpProblem`` and returns the raw solver point and
status; objective and violation are recomputed by the caller from the
problem data, never trusted from the solver.  Backends are optional:
``available_solvers`` only lists adapters whose import succeeds.
"""

from __future__ import annotations

import importlib.util
from dataclasses import dataclass

import numpy as np

from .mps import LpProblem

__all__ = ["SolveOutcome", "available_solvers"]


@dataclass(frozen=True)
class SolveOutcome:
    x: np.ndarray | None
    status: str  # "optimal" | "infeasible" | "unbounded" | "iteration-limit" | "failed"
    iterations: int


_SCIPY_STATUS = {
    0: "optimal",
    1: "iteration-limit",
    2: "infeasible",
    3: "unbounded",
    4: "failed",
}


def _solve_scipy(method: str):
    def run(problem: LpProblem, time_limit: float | None) -> SolveOutcome:
        from scipy.optimize import linprog

        options = {}
        if time_limit is not None:
            options["time_limit"] = float(time_limit)
        res = linprog(
            problem.c,
            A_ub=problem.a if problem.a.size else None,
            b_ub=problem.b if problem.a.size else None,
            bounds=list(zip(problem.lower, problem.upper)),
            method=method,
            options=options or None,
        )
        x = np.asarray(res.x, dtype=float) if res.x is not None else None
        return SolveOutcome(
            x=x,
            status=_SCIPY_STATUS.get(res.status, "failed"),
            iterations=int(res.nit),
        )

    return run


def _solve_gurobi(problem: LpProblem, time_limit: float | None) -> SolveOutcome:
    import gurobipy as gp
    from gurobipy import GRB

    with gp.Env(params={"OutputFlag": 0}) as env, gp.Model(env=env) as model:
        x = model.addMVar(
            problem.c.shape[0], lb=problem.lower, ub=problem.upper, name="x"
        )
        model.setObjective(problem.c @ x, GRB.MINIMIZE)
        if problem.a.size:
            model.addConstr(problem.a @ x <= problem.b)
        model.Params.Method = 0  # primal simplex for comparable pivot counts
        if time_limit is not None:
            model.Params.TimeLimit = float(time_limit)
        model.optimize()
        status = {
            GRB.OPTIMAL: "optimal",
            GRB.INFEASIBLE: "infeasible",
            GRB.UNBOUNDED: "unbounded",
            GRB.ITERATION_LIMIT: "iteration-limit",
            GRB.TIME_LIMIT: "iteration-limit",
        }.get(model.Status, "failed")
        point = np.array(x.X) if model.SolCount > 0 else None
        return SolveOutcome(x=point, status=status, iterations=int(model.IterCount))


def available_solvers() -> dict:
    """Name -> adapter for every backend importable right now."""
    solvers = {}
    if importlib.util.find_spec("scipy") is not None:
        solvers["scipy-highs-ds"] = _solve_scipy("highs-ds")
        solvers["scipy-highs-ipm"] = _solve_scipy("highs-ipm")
        solvers["scipy-highs"] = _solve_scipy("highs")
    if importlib.util.find_spec("gurobipy") is not None:  # pragma: no cover
        solvers["gurobi"] = _solve_gurobi
    return solvers
