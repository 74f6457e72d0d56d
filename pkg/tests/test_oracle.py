import numpy as np
import pytest

from linsup.oracle import (
    CapacityError,
    enumerate_vertices_optimum,
    simplex_solve,
)
from linsup.probgen import InstanceMeta, LpInstance, generate_instance
from linsup.superiorize import superiorize


def make_instance(a, b, c, lower, upper):
    a = np.asarray(a, dtype=float)
    return LpInstance(
        a=a,
        b=np.asarray(b, dtype=float),
        c=np.asarray(c, dtype=float),
        lower=np.asarray(lower, dtype=float),
        upper=np.asarray(upper, dtype=float),
        meta=InstanceMeta(a.shape[0], a.shape[1], 1.0, 0, 10.0),
    )


ONE_DIM = make_instance([[1.0]], [1.0], [-1.0], [-100.0], [100.0])
BOX_ONLY = make_instance(np.zeros((0, 2)), [], [1.0, 1.0], [-100.0, -100.0], [100.0, 100.0])


class TestSimplex:
    def test_one_dimensional(self):
        res = simplex_solve(ONE_DIM)
        assert res.status == "optimal"
        assert res.x_opt == pytest.approx([1.0])
        assert res.objective == pytest.approx(-1.0)

    def test_box_only(self):
        res = simplex_solve(BOX_ONLY)
        assert res.status == "optimal"
        assert res.objective == pytest.approx(-200.0)

    def test_infeasible(self):
        bad = make_instance([[1.0]], [-200.0], [1.0], [-100.0], [100.0])
        assert simplex_solve(bad).status == "infeasible"

    def test_generated_instances_always_optimal(self):
        for seed in range(5):
            inst = generate_instance(10, 12, [1.0, 10.0, 1e3][seed % 3], seed)
            res = simplex_solve(inst)
            assert res.status == "optimal"
            assert res.pivot_count > 0
            # feasibility residuals of the reported point
            assert (inst.a @ res.x_opt - inst.b).max() <= 1e-9 * (1 + np.abs(inst.b).max())
            assert np.all(res.x_opt >= inst.lower - 1e-9)
            assert np.all(res.x_opt <= inst.upper + 1e-9)

    def test_degenerate_duplicate_rows(self):
        a = np.array([[1.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
        inst = make_instance(a, [1.0, 1.0, 2.0], [-1.0, -1.0], [-5.0, -5.0], [5.0, 5.0])
        res = simplex_solve(inst)
        assert res.status == "optimal"
        assert res.objective == pytest.approx(-1.0)

    def test_capacity_cap(self):
        wide = make_instance(
            np.zeros((1, 651)) + 1.0, [1.0], np.ones(651), -np.ones(651), np.ones(651)
        )
        with pytest.raises(CapacityError):
            simplex_solve(wide)

    def test_upper_bound_active_at_optimum(self):
        # maximize x (min -x) with x <= 7 softer than box
        inst = make_instance([[1.0]], [7.0], [-1.0], [-1.0], [3.0])
        res = simplex_solve(inst)
        assert res.x_opt == pytest.approx([3.0])


class TestEnumerator:
    def test_one_dimensional(self):
        assert enumerate_vertices_optimum(ONE_DIM) == pytest.approx(-1.0)

    def test_box_only_corner(self):
        assert enumerate_vertices_optimum(BOX_ONLY) == pytest.approx(-200.0)

    def test_budget_exceeded(self):
        inst = generate_instance(10, 15, 10.0, 0)
        with pytest.raises(CapacityError):
            enumerate_vertices_optimum(inst)

    def test_infeasible_reported(self):
        bad = make_instance([[1.0]], [-200.0], [1.0], [-100.0], [100.0])
        with pytest.raises(ValueError, match="infeasible"):
            enumerate_vertices_optimum(bad)

    def test_agrees_with_simplex_on_small_random(self):
        for seed in range(12):
            kappa = [1.0, 10.0, 100.0, 1e3][seed % 4]
            inst = generate_instance(5, 7, kappa, seed)
            res = simplex_solve(inst)
            opt = enumerate_vertices_optimum(inst)
            assert res.objective == pytest.approx(opt, abs=1e-8)


class TestCrossValidation:
    def test_linsup_never_beats_the_optimum(self):
        for seed in range(3):
            inst = generate_instance(8, 10, 100.0, seed)
            res = simplex_solve(inst)
            x, trace = superiorize(inst)
            assert trace.termination_reason == "converged"
            assert inst.c @ x >= res.objective - 1e-6
