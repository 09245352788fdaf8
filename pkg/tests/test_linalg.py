import numpy as np
import pytest

from itrim.linalg import (
    FactorizationError,
    SingularSystemError,
    cholesky,
    least_squares,
    sym_eig_extremes,
)


def charpoly_eig_extremes(m):
    """Independent eigenvalue oracle for d <= 3: roots of det(m - x I)."""
    m = np.asarray(m, dtype=float)
    d = m.shape[0]
    if d == 1:
        roots = np.array([m[0, 0]])
    elif d == 2:
        tr, det = m[0, 0] + m[1, 1], np.linalg.det(m)
        roots = np.roots([1.0, -tr, det])
    elif d == 3:
        c2 = -np.trace(m)
        c1 = 0.5 * (np.trace(m) ** 2 - np.trace(m @ m))
        c0 = -np.linalg.det(m)
        roots = np.roots([1.0, c2, c1, c0])
    else:
        raise ValueError("oracle limited to d <= 3")
    roots = np.real(roots)
    return roots.min(), roots.max()


class TestLeastSquares:
    def test_mean_of_responses(self):
        beta = least_squares([[1.0], [1.0]], [2.0, 4.0])
        assert beta == pytest.approx([3.0])

    def test_identity_design(self):
        beta = least_squares(np.eye(2), [5.0, 7.0])
        assert beta == pytest.approx([5.0, 7.0])

    def test_exact_fit(self):
        beta = least_squares([[1.0], [2.0], [3.0]], [2.0, 4.0, 6.0])
        assert beta == pytest.approx([2.0], abs=1e-12)

    def test_residual_orthogonality(self):
        rng = np.random.default_rng(0)
        design = rng.normal(size=(40, 6))
        response = rng.normal(size=40)
        beta = least_squares(design, response)
        resid = design.T @ (response - design @ beta)
        assert np.linalg.norm(resid) <= 1e-8 * (
            1 + np.linalg.norm(design.T @ response)
        )

    def test_rank_deficient_raises_with_rank(self):
        design = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
        with pytest.raises(SingularSystemError) as exc:
            least_squares(design, [1.0, 2.0, 3.0])
        assert exc.value.rank == 1

    def test_translation_equivariance(self):
        rng = np.random.default_rng(1)
        design = rng.normal(size=(30, 4))
        response = rng.normal(size=30)
        delta = rng.normal(size=4)
        base = least_squares(design, response)
        shifted = least_squares(design, response + design @ delta)
        assert shifted == pytest.approx(base + delta, abs=1e-8)


class TestSymEigExtremes:
    def test_identity(self):
        assert sym_eig_extremes(np.eye(3)) == pytest.approx((1.0, 1.0))

    def test_diagonal(self):
        assert sym_eig_extremes(np.diag([0.2, 1.0, 4.0])) == pytest.approx((0.2, 4.0))

    def test_2x2_closed_form(self):
        assert sym_eig_extremes([[2.0, 1.0], [1.0, 2.0]]) == pytest.approx((1.0, 3.0))

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            sym_eig_extremes([[1.0, 2.0], [0.0, 1.0]])

    def test_against_characteristic_polynomial(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            d = rng.integers(1, 4)
            a = rng.normal(size=(d, d))
            m = a + a.T
            lo, hi = sym_eig_extremes(m)
            ref_lo, ref_hi = charpoly_eig_extremes(m)
            assert lo == pytest.approx(ref_lo, rel=1e-8, abs=1e-8)
            assert hi == pytest.approx(ref_hi, rel=1e-8, abs=1e-8)

    def test_positive_scaling(self):
        m = np.array([[2.0, 1.0], [1.0, 2.0]])
        lo, hi = sym_eig_extremes(m)
        slo, shi = sym_eig_extremes(3.5 * m)
        assert (slo, shi) == pytest.approx((3.5 * lo, 3.5 * hi))


class TestCholesky:
    def test_identity(self):
        assert cholesky(np.eye(3)) == pytest.approx(np.eye(3))

    def test_diagonal_roots(self):
        assert cholesky(np.diag([4.0, 9.0])) == pytest.approx(np.diag([2.0, 3.0]))

    def test_hand_factor(self):
        lower = cholesky([[4.0, 2.0], [2.0, 5.0]])
        assert lower == pytest.approx(np.array([[2.0, 0.0], [1.0, 2.0]]))

    def test_indefinite_reports_pivot(self):
        m = np.diag([1.0, -1.0, 2.0])
        with pytest.raises(FactorizationError) as exc:
            cholesky(m)
        assert exc.value.pivot_index == 1

    def test_random_spd_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            d = rng.integers(1, 9)
            a = rng.normal(size=(d, d))
            m = a @ a.T + d * np.eye(d)
            lower = cholesky(m)
            err = np.linalg.norm(lower @ lower.T - m) / np.linalg.norm(m)
            assert err <= 1e-10
