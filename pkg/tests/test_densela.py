import numpy as np
import pytest

from linsup.densela import (
    RankDeficiencyError,
    estimate_condition_number,
    matvec,
    random_semi_orthogonal,
)


def naive_matvec(a, x):
    """Straightforward reference: explicit double loop."""
    m, n = a.shape
    out = np.zeros(m)
    for i in range(m):
        acc = 0.0
        for j in range(n):
            acc += a[i, j] * x[j]
        out[i] = acc
    return out


class TestRandomSemiOrthogonal:
    def test_one_by_one_is_unit(self):
        for seed in range(20):
            m = random_semi_orthogonal(1, 1, seed)
            assert m.shape == (1, 1)
            assert abs(abs(m[0, 0]) - 1.0) < 1e-15

    def test_deterministic_in_seed(self):
        a = random_semi_orthogonal(5, 3, 42)
        b = random_semi_orthogonal(5, 3, 42)
        assert a.tobytes() == b.tobytes()
        c = random_semi_orthogonal(5, 3, 43)
        assert a.tobytes() != c.tobytes()

    def test_tall_columns_orthonormal(self):
        m = random_semi_orthogonal(100, 80, 7)
        resid = m.T @ m - np.eye(80)
        assert np.abs(resid).max() < 1e-12

    def test_wide_rows_orthonormal(self):
        m = random_semi_orthogonal(80, 100, 7)
        resid = m @ m.T - np.eye(80)
        assert np.abs(resid).max() < 1e-12

    @pytest.mark.parametrize("rows,cols", [(2, 2), (10, 4), (4, 10), (300, 300), (2000, 400)])
    def test_residual_across_sizes(self, rows, cols):
        m = random_semi_orthogonal(rows, cols, 123)
        k = min(rows, cols)
        gram = m.T @ m if rows >= cols else m @ m.T
        assert np.abs(gram - np.eye(k)).max() < 1e-12

    def test_zero_dimension_rejected(self):
        with pytest.raises(ValueError):
            random_semi_orthogonal(0, 3, 1)
        with pytest.raises(ValueError):
            random_semi_orthogonal(3, 0, 1)

    def test_output_contiguous_float64(self):
        m = random_semi_orthogonal(4, 9, 5)
        assert m.dtype == np.float64 and m.flags["C_CONTIGUOUS"]


class TestMatvec:
    def test_identity(self):
        assert np.array_equal(matvec(np.eye(3), [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])

    def test_hand_example(self):
        out = matvec([[1.0, 2.0], [3.0, 4.0]], [1.0, 1.0])
        assert np.array_equal(out, [3.0, 7.0])

    def test_zero_matrix(self):
        assert np.array_equal(matvec(np.zeros((2, 4)), np.arange(4.0)), np.zeros(2))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            matvec(np.eye(3), np.ones(4))

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            matvec([[np.nan]], [1.0])

    def test_agrees_with_naive_reference(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            m, n = rng.integers(1, 12, size=2)
            a = rng.standard_normal((m, n))
            x = rng.standard_normal(n)
            got = matvec(a, x)
            want = naive_matvec(a, x)
            scale = np.abs(want).max() + 1.0
            assert np.abs(got - want).max() / scale < 1e-13


class TestEstimateConditionNumber:
    def test_identity_is_one(self):
        assert estimate_condition_number(np.eye(5)) == pytest.approx(1.0, rel=1e-12)

    def test_diagonal_ratio(self):
        assert estimate_condition_number(np.diag([10.0, 0.1])) == pytest.approx(
            100.0, rel=1e-12
        )

    def test_random_diagonal_spectra_exact(self):
        rng = np.random.default_rng(99)
        for _ in range(100):
            vals = rng.uniform(0.1, 50.0, size=12)
            a = np.diag(vals)
            want = vals.max() / vals.min()
            assert estimate_condition_number(a, 1e-8) == pytest.approx(want, rel=1e-10)

    def test_rectangular(self):
        rng = np.random.default_rng(3)
        a = random_semi_orthogonal(9, 5, 3) * np.array([4.0, 3.0, 2.0, 1.0, 0.5])
        assert estimate_condition_number(a) == pytest.approx(8.0, rel=1e-10)
        del rng

    def test_rank_deficient_rejected(self):
        a = np.ones((3, 3))
        with pytest.raises(RankDeficiencyError):
            estimate_condition_number(a)

    def test_bad_tol_rejected(self):
        with pytest.raises(ValueError):
            estimate_condition_number(np.eye(2), 0.0)
        with pytest.raises(ValueError):
            estimate_condition_number(np.eye(2), -1.0)
