import math

import numpy as np
import pytest

from probalab.catalog import make_law, ks_statistic_vs_cdf
from probalab.errors import (
    NonZeroCrossCovariance,
    NotPositiveSemidefinite,
    ShapeMismatch,
    SingularCovariance,
)
from probalab.gaussvec import (
    GaussianVector,
    SymMatrix,
    eigendecompose,
    uncorrelated_independence_check,
)
from probalab.special import ks_critical


def cofactor_det(a):
    """Laplace-expansion determinant, the d <= 4 oracle."""
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    if d == 1:
        return a[0, 0]
    total = 0.0
    for j in range(d):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += ((-1.0) ** j) * a[0, j] * cofactor_det(minor)
    return total


class TestEigendecompose:
    def test_identity(self):
        t, delta = eigendecompose(np.eye(2))
        assert np.array_equal(delta, [1.0, 1.0])
        assert np.array_equal(t, np.eye(2))

    def test_two_by_two_hand_oracle(self):
        # (2 - x)^2 - 1 = 0 gives eigenvalues 3 and 1
        t, delta = eigendecompose(np.array([[2.0, 1.0], [1.0, 2.0]]))
        assert delta == pytest.approx([3.0, 1.0], abs=1e-12)

    def test_zero_matrix(self):
        _, delta = eigendecompose(np.zeros((2, 2)))
        assert np.array_equal(delta, [0.0, 0.0])

    def test_asymmetric_rejected(self):
        with pytest.raises(ShapeMismatch):
            eigendecompose(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_random_matrices_reconstruction_and_orthogonality(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            d = int(rng.integers(1, 17))
            a = rng.uniform(-1.0, 1.0, (d, d))
            a = a + a.T
            t, delta = eigendecompose(a)
            assert np.abs(t @ t.T - np.eye(d)).max() < 1e-10
            assert np.abs(t.T @ np.diag(delta) @ t - a).max() < 1e-9
            off = t @ a @ t.T - np.diag(delta)
            assert np.abs(off).max() < 1e-10 * max(1.0, np.abs(a).max() * d)

    def test_orthogonal_is_isometry(self):
        rng = np.random.default_rng(5)
        a = rng.uniform(-1.0, 1.0, (8, 8))
        a = a + a.T
        t, _ = eigendecompose(a)
        for _ in range(100):
            x = rng.normal(size=8)
            assert np.linalg.norm(t @ x) == pytest.approx(np.linalg.norm(x), abs=1e-12)

    def test_det_matches_cofactor_oracle(self):
        rng = np.random.default_rng(7)
        for d in (1, 2, 3, 4):
            a = rng.uniform(-1.0, 1.0, (d, d))
            a = a + a.T
            _, delta = eigendecompose(a)
            assert float(np.prod(delta)) == pytest.approx(cofactor_det(a), abs=1e-10)

    def test_useful_identity_rank_one_expansion(self):
        # a_ij = sum_h delta_h T_hi T_hj
        rng = np.random.default_rng(9)
        a = rng.uniform(-1.0, 1.0, (6, 6))
        a = a + a.T
        t, delta = eigendecompose(a)
        rebuilt = sum(
            delta[h] * np.outer(t[h], t[h]) for h in range(6)
        )
        assert np.abs(rebuilt - a).max() < 1e-10

    def test_deterministic_ordering(self):
        a = np.diag([1.0, -3.0, 2.0])
        _, delta = eigendecompose(a)
        assert np.array_equal(delta, [-3.0, 2.0, 1.0])


class TestSymMatrix:
    def test_enforces_exact_symmetry(self):
        SymMatrix(np.array([[1.0, 2.0], [2.0, 5.0]]))
        with pytest.raises(ShapeMismatch):
            SymMatrix(np.array([[1.0, 2.0], [2.0 + 1e-15, 5.0]]))


class TestGaussianVector:
    def test_mgf_values(self):
        gv = GaussianVector([0.0], [[1.0]])
        assert float(gv.mgf([0.0])) == 1.0
        assert float(gv.mgf([1.0])) == pytest.approx(math.exp(0.5))
        gv2 = GaussianVector([1.0, 0.0], np.eye(2))
        assert float(gv2.mgf([1.0, 1.0])) == pytest.approx(math.e**2)

    def test_pdf_scalar_and_bivariate(self):
        gv1 = GaussianVector([0.0], [[1.0]])
        assert float(gv1.pdf([0.0])) == pytest.approx(1.0 / math.sqrt(2 * math.pi))
        gv2 = GaussianVector([0.0, 0.0], np.eye(2))
        assert float(gv2.pdf([0.0, 0.0])) == pytest.approx(1.0 / (2 * math.pi))

    def test_pdf_integrates_to_one_2d(self):
        gv = GaussianVector([0.5, -0.5], np.array([[2.0, 1.0], [1.0, 2.0]]))
        xs = np.linspace(-8.0, 9.0, 241)
        ys = np.linspace(-9.0, 8.0, 241)
        grid = np.array([[gv.pdf([x, y]) for y in ys] for x in xs])
        mass = np.trapezoid(np.trapezoid(grid, ys, axis=1), xs)
        assert mass == pytest.approx(1.0, abs=1e-4)

    def test_singular_pdf_refused(self):
        gv = GaussianVector([0.0, 0.0], np.array([[1.0, 0.0], [0.0, 0.0]]))
        with pytest.raises(SingularCovariance):
            gv.pdf([0.0, 0.0])
        with pytest.raises(SingularCovariance):
            gv.quadratic_form([[0.0, 0.0]])

    def test_negative_covariance_rejected(self):
        with pytest.raises(NotPositiveSemidefinite):
            GaussianVector([0.0, 0.0], np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_zero_covariance_sampling(self):
        gv = GaussianVector([3.0, 1.0], np.zeros((2, 2)))
        assert np.array_equal(gv.sample(4, 0), np.tile([3.0, 1.0], (4, 1)))

    def test_sampling_covariance(self):
        gv = GaussianVector([0.0, 0.0], np.array([[2.0, 1.0], [1.0, 2.0]]))
        x = gv.sample(1_000_000, 11)
        emp = np.cov(x.T)
        assert emp[0, 1] == pytest.approx(1.0, abs=0.01)
        assert emp[0, 0] == pytest.approx(2.0, abs=0.02)

    def test_identity_covariance_off_diagonal(self):
        gv = GaussianVector([0.0, 0.0], np.eye(2))
        x = gv.sample(1_000_000, 13)
        assert abs(float(np.cov(x.T)[0, 1])) < 0.005

    def test_affine_identity(self):
        gv = GaussianVector([1.0, 2.0], np.array([[2.0, 1.0], [1.0, 2.0]]))
        same = gv.affine(np.eye(2), np.zeros(2))
        assert np.array_equal(same.mean, gv.mean)
        assert np.array_equal(same.cov, gv.cov)

    def test_affine_row_sum(self):
        gv = GaussianVector([1.0, 2.0], np.eye(2))
        s = gv.affine(np.array([[1.0, 1.0]]))
        assert s.mean == pytest.approx([3.0])
        assert np.allclose(s.cov, [[2.0]], atol=1e-14)

    def test_affine_projection_is_marginal(self):
        cov = np.array([[2.0, 0.5], [0.5, 1.0]])
        gv = GaussianVector([1.0, -1.0], cov)
        proj = gv.affine(np.array([[1.0, 0.0]]))
        assert proj.mean == pytest.approx([1.0])
        assert np.allclose(proj.cov, [[2.0]], atol=1e-14)

    def test_affine_shape_mismatch(self):
        gv = GaussianVector([0.0, 0.0], np.eye(2))
        with pytest.raises(ShapeMismatch):
            gv.affine(np.ones((2, 3)))

    def test_quadratic_form_at_mean_and_scalar_reduction(self):
        gv = GaussianVector([1.0, 2.0], np.eye(2))
        assert float(gv.quadratic_form([[1.0, 2.0]])) == 0.0
        gv1 = GaussianVector([1.0], [[4.0]])
        assert float(gv1.quadratic_form([[3.0]])) == pytest.approx((3.0 - 1.0) ** 2 / 4.0)

    @pytest.mark.parametrize("d", [1, 2, 5])
    def test_quadratic_form_is_chi2(self, d):
        gv = GaussianVector(np.zeros(d), np.eye(d))
        n = 100_000
        q = gv.quadratic_form(gv.sample(n, 17 + d))
        chi = make_law("chi_square", d=d)
        assert ks_statistic_vs_cdf(q, chi.law.cdf) < ks_critical(n, 0.01)

    def test_quadratic_form_mean_2d(self):
        gv = GaussianVector(np.zeros(2), np.eye(2))
        q = gv.quadratic_form(gv.sample(100_000, 19))
        assert float(q.mean()) == pytest.approx(2.0, abs=0.05)


class TestUncorrelatedIndependence:
    def test_diagonal_split_exact(self):
        gv = GaussianVector(np.zeros(2), np.diag([1.0, 1.0]))
        assert uncorrelated_independence_check(gv, 1)["passed"]

    def test_three_dim_split(self):
        gv = GaussianVector(np.zeros(3), np.diag([2.0, 3.0, 4.0]))
        assert uncorrelated_independence_check(gv, 1)["passed"]

    def test_nonzero_cross_block_rejected(self):
        gv = GaussianVector(np.zeros(2), np.array([[1.0, 0.5], [0.5, 1.0]]))
        with pytest.raises(NonZeroCrossCovariance):
            uncorrelated_independence_check(gv, 1)

    def test_mc_factorization_of_blocks(self):
        from probalab.charfn import independence_factorization_test

        gv = GaussianVector(np.zeros(2), np.diag([1.0, 2.0]))
        pairs = gv.sample(100_000, 23)
        dev = independence_factorization_test(pairs, [0.5, 1.0], [0.5, 1.0])
        assert dev < 0.02


def test_variance_bilinearity_on_samples():
    # Var(sum a_i x_i) expanded through covariances, exact finite sums
    rng = np.random.default_rng(29)
    for _ in range(20):
        k = int(rng.integers(2, 5))
        x = rng.normal(size=(200, k))
        alpha = rng.uniform(-2.0, 2.0, k)
        direct = float(np.var(x @ alpha))
        cov = np.cov(x.T, bias=True)
        expanded = float(alpha @ cov @ alpha)
        assert direct == pytest.approx(expanded, abs=1e-12)


def test_cov_affine_transport():
    # Cov(AX, BZ) = A Cov(X, Z) B^t on empirical data, exact
    rng = np.random.default_rng(31)
    x = rng.normal(size=(500, 3))
    z = rng.normal(size=(500, 2))
    a = rng.uniform(-1.0, 1.0, (2, 3))
    b = rng.uniform(-1.0, 1.0, (2, 2))
    cross = np.zeros((3, 2))
    xc = x - x.mean(axis=0)
    zc = z - z.mean(axis=0)
    cross = xc.T @ zc / 500.0
    lhs = (x @ a.T - (x @ a.T).mean(axis=0)).T @ (z @ b.T - (z @ b.T).mean(axis=0)) / 500.0
    assert np.abs(lhs - a @ cross @ b.T).max() < 1e-12


def test_sampling_tolerances_mean_and_cov():
    # per-coordinate mean within 4 sqrt(delta_max / n); covariance
    # within 5/sqrt(n) in max norm
    gv = GaussianVector([1.0, -1.0], np.array([[2.0, 1.0], [1.0, 2.0]]))
    n = 1_000_000
    x = gv.sample(n, 101)
    delta_max = float(gv.eigenvalues.max())
    assert np.abs(x.mean(axis=0) - gv.mean).max() < 4.0 * math.sqrt(delta_max / n)
    xc = x - gv.mean
    emp = xc.T @ xc / n
    assert np.abs(emp - gv.cov).max() < 5.0 / math.sqrt(n)
