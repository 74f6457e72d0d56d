"""Geometry of the overshooting projection step, in two dimensions.

A violated half-space constraint pulls the point back past its boundary:
the landing spot sits exactly overshoot-r deep inside, measured in
Euclidean distance.  Satisfied constraints never move the point, and a
full sweep runs through the rows in fixed order.
"""

import numpy as np

from linsup import HalfspaceSystem, max_violation, project_halfspace, sweep

r = 0.25  # exaggerated overshoot so the numbers are visible
sys = HalfspaceSystem(
    a=np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]),
    b=np.array([1.0, 1.0, 2.0]),
    overshoot=r,
)

x = np.array([3.0, 0.5])
print(f"start x = {x}, violations per row = {sys.a @ x - sys.b}")

x1 = project_halfspace(x, sys, 0)
print(f"\nafter projecting onto row 0 (x <= 1): {x1}")
print(f"  constraint value {sys.a[0] @ x1:.3f} = b - r*||a|| = {sys.b[0] - r * sys.row_norms[0]:.3f}")
print(f"  the point moved {np.linalg.norm(x1 - x):.3f}, i.e. violation/||a|| + r")

x2 = project_halfspace(x1, sys, 1)
print(f"\nrow 1 (y <= 1) is already satisfied, projection returns it untouched: {x2 is x1}")

swept = sweep(x, sys)
print(f"\nfull sweep from {x}: {swept}, max violation {max_violation(swept, sys):.3f}")

# Fejer monotonicity: sweeps never move away from deep-feasible points
rng = np.random.default_rng(0)
z = np.array([-0.5, -0.5])  # r-deep inside all three half-spaces
print(f"\ndistances to the anchor {z} never grow:")
p = np.array([40.0, -17.0])
for k in range(4):
    print(f"  sweep {k}: ||x - z|| = {np.linalg.norm(p - z):9.4f}, x = {np.round(p, 4)}")
    p = sweep(p, sys)
