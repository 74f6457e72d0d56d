"""Cyclic projections onto half-spaces with a fixed overshoot depth.

A violated constraint ``<a_i, x> <= b_i`` is handled by projecting past
its bounding hyperplane: the result lands where ``<a_i, x'> = b_i -
r * ||a_i||``, i.e. Euclidean distance ``r`` beyond the boundary.  Points
already satisfying the constraint (including boundary points) are left
untouched.  A sweep composes the single-row projections in fixed index
order 0, 1, ..., m-1.
"""

from __future__ import annotations

import numpy as np

from .densela import as_matrix, as_vector

__all__ = ["HalfspaceSystem", "project_halfspace", "sweep", "max_violation"]


class HalfspaceSystem:
    """Immutable bundle of rows ``<a_i, x> <= b_i`` with precomputed norms.

    ``overshoot`` is the projection depth r.  It must be nonnegative;
    r = 0 gives the plain orthogonal projection and is mainly useful in
    tests.  Rows with zero norm are rejected outright: a zero row is
    either vacuous or makes the system infeasible, and silently skipping
    it would hide that.
    """

    __slots__ = ("a", "b", "row_norms", "overshoot", "_norms_sq")

    def __init__(self, a, b, overshoot: float = 1e-3):
        a = as_matrix(a, "a")
        b = as_vector(b, "b")
        if a.shape[0] != b.shape[0]:
            raise ValueError(
                f"a has {a.shape[0]} rows but b has length {b.shape[0]}"
            )
        if not overshoot >= 0.0:
            raise ValueError(f"overshoot must be nonnegative, got {overshoot}")
        norms = np.linalg.norm(a, axis=1)
        zero_rows = np.flatnonzero(norms == 0.0)
        if zero_rows.size:
            raise ValueError(f"rows with zero norm not allowed: {zero_rows.tolist()}")
        self.a = a
        self.b = b
        self.row_norms = norms
        self.overshoot = float(overshoot)
        self._norms_sq = norms * norms

    @property
    def m(self) -> int:
        return self.a.shape[0]

    @property
    def n(self) -> int:
        return self.a.shape[1]


def _check_point(x, sys: HalfspaceSystem) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (sys.n,):
        raise ValueError(f"point must have shape ({sys.n},), got {x.shape}")
    return x


def project_halfspace(x, sys: HalfspaceSystem, i: int) -> np.ndarray:
    """Project ``x`` past row i's hyperplane if the row is violated.

    Returns ``x`` itself (not a copy) when ``<a_i, x> <= b_i``; otherwise
    a new vector with ``<a_i, result> = b_i - r * ||a_i||``.
    """
    if not 0 <= i < sys.m:
        raise IndexError(f"row index {i} out of range for m={sys.m}")
    x = _check_point(x, sys)
    row = sys.a[i]
    value = row @ x
    if value <= sys.b[i]:
        return x
    step = (value - sys.b[i] + sys.overshoot * sys.row_norms[i]) / sys._norms_sq[i]
    return x - step * row


def sweep(x, sys: HalfspaceSystem) -> np.ndarray:
    """Apply project_halfspace for rows 0..m-1 in that fixed order."""
    y = _check_point(x, sys).copy()
    a = sys.a
    b = sys.b
    norms = sys.row_norms
    norms_sq = sys._norms_sq
    r = sys.overshoot
    for i in range(a.shape[0]):
        row = a[i]
        value = row @ y
        if value > b[i]:
            y -= ((value - b[i] + r * norms[i]) / norms_sq[i]) * row
    return y


def max_violation(x, sys: HalfspaceSystem) -> float:
    """Largest constraint value ``<a_i, x> - b_i`` over all rows (signed)."""
    x = _check_point(x, sys)
    return float(np.max(sys.a @ x - sys.b))
