import numpy as np
import pytest

from linsup.feasibility import HalfspaceSystem, max_violation, project_halfspace, sweep
from linsup.probgen import generate_instance


def single_row(a, b, r):
    return HalfspaceSystem(np.array([a]), np.array([b]), r)


class TestConstruction:
    def test_row_norms_precomputed(self):
        rng = np.random.default_rng(1)
        a = rng.standard_normal((7, 4))
        sys = HalfspaceSystem(a, np.zeros(7), 1e-3)
        want = np.sqrt((a * a).sum(axis=1))
        assert np.abs(sys.row_norms - want).max() <= 1e-14 * want.max()

    def test_zero_row_rejected(self):
        a = np.array([[1.0, 2.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="zero"):
            HalfspaceSystem(a, np.zeros(2), 1e-3)

    def test_negative_overshoot_rejected(self):
        with pytest.raises(ValueError):
            single_row([1.0, 0.0], 0.0, -1e-3)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            HalfspaceSystem(np.ones((2, 3)), np.zeros(3), 1e-3)


class TestProjectHalfspace:
    def test_violated_point_lands_past_hyperplane(self):
        sys = single_row([1.0, 0.0], 0.0, 1e-3)
        out = project_halfspace(np.array([2.0, 5.0]), sys, 0)
        assert np.allclose(out, [-1e-3, 5.0], atol=1e-15)

    def test_satisfied_point_untouched(self):
        sys = single_row([1.0, 0.0], 0.0, 0.123)
        x = np.array([-1.0, 3.0])
        out = project_halfspace(x, sys, 0)
        assert out is x

    def test_boundary_point_untouched(self):
        sys = single_row([1.0, 0.0], 1.0, 0.5)
        x = np.array([1.0, 9.0])
        assert project_halfspace(x, sys, 0) is x

    def test_zero_overshoot_is_plain_projection(self):
        sys = single_row([3.0, 4.0], 1.0, 0.0)
        out = project_halfspace(np.array([3.0, 4.0]), sys, 0)
        assert np.array([3.0, 4.0]) @ out == pytest.approx(1.0, abs=1e-12 * 2)

    def test_index_out_of_range(self):
        sys = single_row([1.0, 0.0], 0.0, 1e-3)
        with pytest.raises(IndexError):
            project_halfspace(np.zeros(2), sys, 1)
        with pytest.raises(IndexError):
            project_halfspace(np.zeros(2), sys, -1)

    def test_margin_property_random(self):
        # moved points land exactly on the shifted hyperplane
        rng = np.random.default_rng(2024)
        for _ in range(10_000):
            n = rng.integers(1, 8)
            a = rng.standard_normal(n)
            while np.linalg.norm(a) == 0.0:
                a = rng.standard_normal(n)
            b = float(rng.standard_normal()) * 3.0
            r = float(rng.uniform(1e-6, 1.0))
            x = rng.standard_normal(n) * 5.0
            sys = single_row(a, b, r)
            out = project_halfspace(x, sys, 0)
            if out is not x:
                target = b - r * sys.row_norms[0]
                assert abs(a @ out - target) <= 1e-10 * (1.0 + abs(b))
                # idempotence on the shifted set
                again = project_halfspace(out, sys, 0)
                assert again is out


class TestSweep:
    def test_feasible_point_unchanged(self):
        inst = generate_instance(10, 12, 10.0, 3)
        sys = HalfspaceSystem(inst.a, inst.b, 1e-3)
        x = np.ones(12)
        assert np.array_equal(sweep(x, sys), x)

    def test_single_row_system_matches_projection(self):
        sys = single_row([1.0, 2.0], -1.0, 1e-2)
        x = np.array([4.0, 4.0])
        assert np.array_equal(sweep(x, sys), project_halfspace(x, sys, 0))

    def test_two_orthogonal_rows(self):
        sys = HalfspaceSystem(np.array([[1.0, 0.0], [0.0, 1.0]]), np.zeros(2), 0.0)
        out = sweep(np.array([1.0, 1.0]), sys)
        assert np.allclose(out, [0.0, 0.0], atol=1e-15)

    def test_equals_sequential_projections(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            m, n = rng.integers(1, 9, size=2)
            a = rng.standard_normal((m, n))
            b = rng.standard_normal(m)
            sys = HalfspaceSystem(a, b, float(rng.uniform(0, 0.1)))
            x = rng.standard_normal(n) * 3
            y = x
            for i in range(m):
                y = project_halfspace(y, sys, i)
            assert np.array_equal(sweep(x, sys), y)

    def test_row_order_is_pinned(self):
        # two non-orthogonal rows: processing order changes the output
        a = np.array([[1.0, 0.0], [1.0, 1.0]])
        b = np.array([-1.0, -1.0])
        x = np.array([2.0, 2.0])
        fwd = sweep(x, HalfspaceSystem(a, b, 1e-3))
        rev = sweep(x, HalfspaceSystem(a[::-1].copy(), b[::-1].copy(), 1e-3))
        assert not np.allclose(fwd, rev)

    def test_fejer_property(self):
        # sweeps never increase the distance to any point of the shifted set
        rng = np.random.default_rng(77)
        for _ in range(1000):
            m = int(rng.integers(1, 12))
            n = int(rng.integers(2, 10))
            a = rng.standard_normal((m, n))
            r = float(rng.uniform(1e-4, 0.5))
            z = rng.standard_normal(n) * 2.0
            margins = rng.uniform(0.0, 1.0, size=a.shape[0])
            norms = np.linalg.norm(a, axis=1)
            b = a @ z + r * norms + margins  # z is r-deep feasible
            sys = HalfspaceSystem(a, b, r)
            x = rng.standard_normal(n) * 10.0
            assert np.linalg.norm(sweep(x, sys) - z) <= np.linalg.norm(x - z) + 1e-10


class TestMaxViolation:
    def test_generated_instance_at_ones(self):
        inst = generate_instance(15, 20, 1e3, 0)
        sys = HalfspaceSystem(inst.a, inst.b, 1e-3)
        assert max_violation(np.ones(20), sys) == pytest.approx(-1.0, abs=1e-12)

    def test_interior_point_negative(self):
        sys = HalfspaceSystem(np.array([[1.0, 0.0], [0.0, 1.0]]), np.ones(2), 1e-3)
        assert max_violation(np.array([-5.0, -9.0]), sys) == -6.0

    def test_hand_value(self):
        sys = single_row([1.0, 0.0], 0.0, 1e-3)
        assert max_violation(np.array([2.0, 0.0]), sys) == 2.0
