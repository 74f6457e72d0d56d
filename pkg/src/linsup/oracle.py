"""Desk-scale ground truth for the LP instances.

Two independent routes: a dense bounded-variable primal simplex (two
phases, Bland's rule) intended for up to a few hundred rows, and a
brute-force optimum over all candidate vertices -- every choice of n
active constraints among the m rows and 2n bound facets -- which is
exponential but exact, and exists to validate the simplex itself on
small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

__all__ = [
    "CapacityError",
    "OracleResult",
    "simplex_solve",
    "enumerate_vertices_optimum",
    "SIMPLEX_MAX_ROWS",
    "SIMPLEX_MAX_COLS",
    "ENUMERATION_BUDGET",
]

SIMPLEX_MAX_ROWS = 500
SIMPLEX_MAX_COLS = 650
ENUMERATION_BUDGET = 20_000_000

# Entering/leaving eligibility threshold.
_PIVOT_TOL = 1e-10
_MAX_PIVOTS = 100_000


class CapacityError(ValueError):
    """Problem exceeds the deliberate size cap of the oracle."""


@dataclass(frozen=True)
class OracleResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x_opt: np.ndarray | None
    objective: float | None
    pivot_count: int


def _solve(gb: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if gb.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.solve(gb, rhs)


def _basic_solution(g, rhs, lb, ub, basis, at_upper):
    """Full variable vector implied by a basis and nonbasic bound flags."""
    z = np.where(at_upper, ub, lb)
    z[basis] = 0.0
    if basis.size:
        z[basis] = _solve(g[:, basis], rhs - g @ z)
    return z


def _bounded_simplex(g, rhs, cost, lb, ub, basis, at_upper):
    """Primal simplex over ``g z = rhs, lb <= z <= ub`` from a feasible basis.

    Nonbasic variables sit at the bound selected by ``at_upper``.  The
    entering variable is the lowest-index eligible one and ratio-test
    ties also resolve to the lowest variable index (Bland), so cycling
    cannot occur.  Basic values are re-solved from scratch every pivot,
    trading speed for numerical robustness.  Returns
    ``(status, basis, at_upper, pivots)``.
    """
    m, ncols = g.shape
    basis = np.asarray(basis, dtype=np.intp).copy()
    at_upper = at_upper.copy()
    in_basis = np.zeros(ncols, dtype=bool)
    in_basis[basis] = True
    movable = lb < ub
    pivots = 0

    while True:
        gb = g[:, basis]
        z = np.where(at_upper, ub, lb)
        z[basis] = 0.0
        xb = _solve(gb, rhs - g @ z) if m else np.zeros(0)
        y = _solve(gb.T, cost[basis]) if m else np.zeros(0)
        reduced = cost - g.T @ y

        eligible = ~in_basis & movable & (
            (~at_upper & (reduced < -_PIVOT_TOL)) | (at_upper & (reduced > _PIVOT_TOL))
        )
        idx = np.flatnonzero(eligible)
        if idx.size == 0:
            return "optimal", basis, at_upper, pivots
        enter = int(idx[0])
        sigma = -1.0 if at_upper[enter] else 1.0

        d = _solve(gb, g[:, enter]) if m else np.zeros(0)
        delta = sigma * d

        # Step limits from basic variables hitting one of their bounds.
        t_limits = np.full(m, np.inf)
        hit_upper = np.zeros(m, dtype=bool)
        dec = delta > _PIVOT_TOL
        if np.any(dec):
            t_limits[dec] = (xb[dec] - lb[basis[dec]]) / delta[dec]
        inc = delta < -_PIVOT_TOL
        if np.any(inc):
            cap = ub[basis[inc]]
            with np.errstate(invalid="ignore"):
                t_inc = (cap - xb[inc]) / (-delta[inc])
            t_limits[inc] = np.where(np.isfinite(cap), t_inc, np.inf)
            hit_upper[inc] = True
        np.maximum(t_limits, 0.0, out=t_limits)  # clamp roundoff degeneracy

        t_flip = ub[enter] - lb[enter]
        t_star = min(float(t_limits.min()) if m else np.inf, t_flip)
        if not np.isfinite(t_star):
            return "unbounded", basis, at_upper, pivots

        blocking = np.flatnonzero(t_limits <= t_star * (1.0 + 1e-12) + 1e-300)
        if blocking.size == 0 or t_flip < t_limits[blocking].min():
            at_upper[enter] = ~at_upper[enter]  # bound flip, basis unchanged
        else:
            pos = int(blocking[np.argmin(basis[blocking])])
            leave = int(basis[pos])
            at_upper[leave] = hit_upper[pos]
            in_basis[leave] = False
            in_basis[enter] = True
            at_upper[enter] = False
            basis[pos] = enter
        pivots += 1
        if pivots > _MAX_PIVOTS:  # unreachable under Bland's rule
            raise RuntimeError("simplex exceeded pivot cap; cycling suspected")


def simplex_solve(inst) -> OracleResult:
    """Solve an LP instance exactly with a dense two-phase simplex.

    Slack variables turn the rows into equalities; box bounds stay on
    the variables themselves so the working matrix is only m x (n + m)
    plus one artificial column per initially violated row.
    """
    a = np.ascontiguousarray(inst.a, dtype=np.float64)
    b = np.ascontiguousarray(inst.b, dtype=np.float64)
    c = np.ascontiguousarray(inst.c, dtype=np.float64)
    lower = np.ascontiguousarray(inst.lower, dtype=np.float64)
    upper = np.ascontiguousarray(inst.upper, dtype=np.float64)
    m, n = a.shape
    if m > SIMPLEX_MAX_ROWS or n > SIMPLEX_MAX_COLS:
        raise CapacityError(
            f"instance {m}x{n} exceeds the oracle cap "
            f"{SIMPLEX_MAX_ROWS}x{SIMPLEX_MAX_COLS}"
        )
    if np.any(lower > upper):
        raise ValueError("lower bound exceeds upper bound in some component")

    # Start all structural variables at their lower bound; rows whose
    # slack would come out negative get an artificial column of -1.
    s0 = b - a @ lower
    neg_rows = np.flatnonzero(s0 < 0.0)
    n_art = neg_rows.size
    g = np.zeros((m, n + m + n_art))
    g[:, :n] = a
    g[:, n : n + m] = np.eye(m)
    for j, i in enumerate(neg_rows):
        g[i, n + m + j] = -1.0
    lb = np.concatenate([lower, np.zeros(m + n_art)])
    ub = np.concatenate([upper, np.full(m + n_art, np.inf)])

    basis = np.arange(n, n + m)
    basis[neg_rows] = n + m + np.arange(n_art)
    at_upper = np.zeros(n + m + n_art, dtype=bool)

    pivots = 0
    if n_art:
        cost1 = np.zeros(n + m + n_art)
        cost1[n + m :] = 1.0
        status, basis, at_upper, p1 = _bounded_simplex(g, b, cost1, lb, ub, basis, at_upper)
        pivots += p1
        if status != "optimal":  # pragma: no cover - phase 1 is bounded below
            raise RuntimeError(f"phase 1 ended with status {status}")
        z = _basic_solution(g, b, lb, ub, basis, at_upper)
        residual = float(z[n + m :].sum())
        if residual > 1e-8 * (1.0 + float(np.abs(b).max(initial=0.0))):
            return OracleResult("infeasible", None, None, pivots)
        ub[n + m :] = 0.0  # artificials may stay basic at zero but never move

    cost2 = np.zeros(n + m + n_art)
    cost2[:n] = c
    status, basis, at_upper, p2 = _bounded_simplex(g, b, cost2, lb, ub, basis, at_upper)
    pivots += p2
    if status == "unbounded":
        return OracleResult("unbounded", None, None, pivots)
    z = _basic_solution(g, b, lb, ub, basis, at_upper)
    x = z[:n].copy()
    return OracleResult("optimal", x, float(c @ x), pivots)


def enumerate_vertices_optimum(inst, budget: int = ENUMERATION_BUDGET) -> float:
    """Exact optimum by brute force over candidate vertices.

    Considers every choice of n active constraints out of the m rows and
    2n bound facets, solves the resulting n x n system, keeps the
    feasible solutions and returns the minimal objective.  Subsets that
    pick both facets of one variable are singular and drop out, so the
    enumeration groups candidates by (active rows S, free coordinates F):
    fixed coordinates sit at a bound pattern and the remaining |S| x |F|
    system is solved for all patterns at once.
    """
    a = np.ascontiguousarray(inst.a, dtype=np.float64)
    b = np.ascontiguousarray(inst.b, dtype=np.float64)
    c = np.ascontiguousarray(inst.c, dtype=np.float64)
    lower = np.ascontiguousarray(inst.lower, dtype=np.float64)
    upper = np.ascontiguousarray(inst.upper, dtype=np.float64)
    m, n = a.shape

    total = math.comb(m + 2 * n, n)
    if total > budget:
        raise CapacityError(
            f"{total} candidate constraint subsets exceed the budget {budget}"
        )

    tol_rows = 1e-9 * (1.0 + np.abs(b))
    tol_lo = (lower - 1e-9 * (1.0 + np.abs(lower)))[None, :, None]
    tol_up = (upper + 1e-9 * (1.0 + np.abs(upper)))[None, :, None]
    best = np.inf
    found = False

    for k in range(min(m, n) + 1):
        d = n - k
        combos = list(combinations(range(n), k))
        free_sets = np.array(combos, dtype=np.intp).reshape(len(combos), k)
        nf = free_sets.shape[0]
        mask = np.ones((nf, n), dtype=bool)
        rows_idx = np.repeat(np.arange(nf), k)
        mask[rows_idx, free_sets.ravel()] = False
        comp_sets = np.nonzero(mask)[1].reshape(nf, d)
        bits = ((np.arange(1 << d)[:, None] >> np.arange(d)[None, :]) & 1).astype(bool)
        vals = np.where(
            bits[None, :, :], upper[comp_sets][:, None, :], lower[comp_sets][:, None, :]
        )  # (nf, patterns, d)

        for s_tuple in combinations(range(m), k):
            s_list = list(s_tuple)
            rows = a[s_list]
            if k == 0:
                x_cand = vals.transpose(0, 2, 1)  # (1, n, patterns)
            else:
                mats = rows[:, free_sets].transpose(1, 0, 2)  # (nf, k, k)
                fixed = rows[:, comp_sets].transpose(1, 0, 2)  # (nf, k, d)
                rhs = b[s_list][None, :, None] - np.einsum("fkd,fpd->fkp", fixed, vals)
                try:
                    xf = np.linalg.solve(mats, rhs)
                except np.linalg.LinAlgError:
                    xf = np.full_like(rhs, np.nan)
                    for fi in range(nf):
                        try:
                            xf[fi] = np.linalg.solve(mats[fi], rhs[fi])
                        except np.linalg.LinAlgError:
                            pass  # singular subset defines no vertex
                x_cand = np.empty((nf, n, vals.shape[1]))
                fidx = np.arange(nf)[:, None]
                x_cand[fidx, free_sets] = xf
                x_cand[fidx, comp_sets] = vals.transpose(0, 2, 1)

            ok = np.isfinite(x_cand).all(axis=1)
            ok &= (x_cand >= tol_lo).all(axis=1)
            ok &= (x_cand <= tol_up).all(axis=1)
            if m:
                resid = np.einsum("mn,fnp->fmp", a, x_cand) - b[None, :, None]
                ok &= (resid <= tol_rows[None, :, None]).all(axis=1)
            if ok.any():
                objs = np.einsum("n,fnp->fp", c, x_cand)
                cand_best = float(objs[ok].min())
                if cand_best < best:
                    best = cand_best
                found = True

    if not found:
        raise ValueError("no feasible vertex found: the instance is infeasible")
    return best
