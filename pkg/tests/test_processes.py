import math

import numpy as np
import pytest

from probalab.catalog import ks_statistic_vs_cdf, ks_two_sample, make_law
from probalab.charfn import independence_factorization_test
from probalab.errors import (
    DomainError,
    IncoherentFamily,
    NotPositiveSemidefinite,
    SaturationError,
)
from probalab.processes import (
    FiniteDimFamily,
    brownian_motion,
    coherence_check,
    gaussian_process,
    gen_inverse,
    poisson_process,
    sklar_copula,
)
from probalab.special import ks_critical


class TestGenInverse:
    def test_identity_cdf(self):
        assert gen_inverse(lambda x: np.clip(x, 0.0, 1.0), 0.3, 0.0, 1.0) == pytest.approx(
            0.3, abs=1e-11
        )

    def test_step_cdf_two_point(self):
        cdf = lambda x: float(make_law("bernoulli", p=0.3).law.cdf(x))
        assert gen_inverse(cdf, 0.7) == pytest.approx(0.0, abs=1e-11)
        assert gen_inverse(cdf, 0.71) == pytest.approx(1.0, abs=1e-11)

    def test_property_A_at_result(self):
        entry = make_law("gamma", a=2.0, b=1.0)
        cdf = lambda x: float(entry.law.cdf(x)) if x > 0 else 0.0
        for u in (0.1, 0.5, 0.9):
            q = gen_inverse(cdf, u, 0.0, 5.0)
            assert cdf(q) >= u - 1e-9

    def test_right_limit_identity_continuous(self):
        # G^{-1}(G(x) + 0) = x for strictly increasing continuous G
        g = lambda x: float(make_law("gaussian", m=0.0, sigma=1.0).law.cdf(x))
        x = 0.5
        assert gen_inverse(g, g(x) + 1e-12) == pytest.approx(x, abs=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            gen_inverse(lambda x: 0.5, 1.0)


class TestSklarCopula:
    def setup_method(self):
        self.marg = lambda x: float(make_law("gaussian", m=0.0, sigma=1.0).law.cdf(x))

    def test_product_joint_gives_independence_copula(self):
        joint = lambda x, y: self.marg(x) * self.marg(y)
        c = sklar_copula(joint, self.marg, self.marg)
        grid = np.linspace(0.05, 0.95, 7)
        worst = max(abs(c(u, v) - u * v) for u in grid for v in grid)
        assert worst < 1e-9

    def test_comonotone_joint_gives_min_copula(self):
        joint = lambda x, y: min(self.marg(x), self.marg(y))
        c = sklar_copula(joint, self.marg, self.marg)
        grid = np.linspace(0.1, 0.9, 5)
        worst = max(abs(c(u, v) - min(u, v)) for u in grid for v in grid)
        assert worst < 1e-9

    def test_frechet_lower_bound_case(self):
        joint = lambda x, y: max(self.marg(x) + self.marg(y) - 1.0, 0.0)
        c = sklar_copula(joint, self.marg, self.marg)
        assert c(0.5, 0.5) == pytest.approx(0.0, abs=1e-9)

    def test_uniform_margins(self):
        joint = lambda x, y: self.marg(x) * self.marg(y)
        c = sklar_copula(joint, self.marg, self.marg)
        for s in np.linspace(0.05, 0.95, 10):
            assert c(s, 1.0) == pytest.approx(s, abs=1e-9)
            assert c(1.0, s) == pytest.approx(s, abs=1e-9)

    def test_reconstruction_on_grid(self):
        joint = lambda x, y: self.marg(x) * self.marg(y)
        c = sklar_copula(joint, self.marg, self.marg)
        for x in np.linspace(-2.0, 2.0, 21):
            for y in np.linspace(-2.0, 2.0, 5):
                assert joint(x, y) == pytest.approx(
                    c(self.marg(x), self.marg(y)), abs=1e-9
                )


class TestCoherence:
    def brownian_family(self, tuples):
        return FiniteDimFamily.from_functions(
            lambda t: 0.0, lambda s, t: min(s, t), tuples
        )

    def test_brownian_min_family_coherent(self):
        fam = self.brownian_family([(0.5, 1.0), (0.5, 1.0, 2.0)])
        out = coherence_check(fam, [((0.5, 1.0), (0.5, 1.0, 2.0))])
        assert out["passed"]

    def test_permuted_tuples_canonicalized(self):
        fam = self.brownian_family([(1.0, 0.5), (2.0, 0.5, 1.0)])
        out = coherence_check(fam, [((0.5, 1.0), (0.5, 1.0, 2.0))])
        assert out["passed"]

    def test_constructed_violation_named(self):
        bad = FiniteDimFamily(
            {
                (1.0,): (np.zeros(1), np.array([[2.0]])),
                (0.5, 1.0): (np.zeros(2), np.array([[0.5, 0.5], [0.5, 1.0]])),
            }
        )
        with pytest.raises(IncoherentFamily):
            coherence_check(bad, [((1.0,), (0.5, 1.0))])

    def test_single_tuple_vacuous(self):
        fam = self.brownian_family([(1.0, 2.0)])
        assert coherence_check(fam, [])["passed"]

    def test_random_tuples_from_cov_function(self):
        rng = np.random.default_rng(1)
        tuples = []
        pairs = []
        for _ in range(100):
            s_times = tuple(sorted(rng.uniform(0.1, 5.0, 3)))
            u_times = tuple(sorted(rng.choice(s_times, 2, replace=False)))
            tuples.extend([s_times, u_times])
            pairs.append((u_times, s_times))
        fam = self.brownian_family(tuples)
        assert coherence_check(fam, pairs)["passed"]


class TestPoissonProcess:
    def test_counts_distribution_at_unit_time(self):
        ps = poisson_process(1.0, 1.0, 100_000, seed=2, grid=np.array([1.0]))
        n1 = ps.values[:, 0]
        assert float(n1.mean()) == pytest.approx(1.0, abs=0.02)
        pois = make_law("poisson", lam=1.0)
        kmax = int(n1.max())
        emp = np.bincount(n1.astype(int), minlength=kmax + 1) / n1.size
        tv = 0.5 * sum(
            abs(emp[k] - float(pois.law.pmf(float(k)))) for k in range(kmax + 1)
        ) + 0.5 * pois.law.prob_ge(kmax + 1)
        assert tv < 4.0 / math.sqrt(100_000) * 10  # comfortably under 0.02

    def test_paths_are_counting_paths(self):
        ps = poisson_process(2.0, 3.0, 500, seed=3)
        assert (np.diff(ps.values, axis=1) >= 0).all()
        assert (ps.values == np.round(ps.values)).all()

    def test_zero_at_time_zero_plus(self):
        ps = poisson_process(0.5, 1.0, 2_000, seed=4, grid=np.array([1e-9, 1.0]))
        assert float(ps.values[:, 0].max()) <= 2.0  # essentially no arrivals yet
        assert float(ps.values[:, 0].mean()) < 1e-4

    def test_interarrival_mean(self):
        ps = poisson_process(2.0, 1.0, 50_000, seed=5)
        assert ps.meta["mean_interarrival"] == pytest.approx(0.5, abs=0.01)

    def test_disjoint_increment_independence(self):
        ps = poisson_process(1.0, 2.0, 100_000, seed=6, grid=np.array([1.0, 2.0]))
        first = ps.values[:, 0]
        second = ps.values[:, 1] - ps.values[:, 0]
        dev = independence_factorization_test(
            np.column_stack([first, second]), [0.5, 1.0], [0.5, 1.0]
        )
        assert dev < 0.02

    def test_saturation_guard(self):
        with pytest.raises(SaturationError):
            poisson_process(1000.0, 1000.0, 2, seed=7, hard_cap=1_000,
                            grid=np.array([1.0]))

    def test_domain(self):
        with pytest.raises(DomainError):
            poisson_process(0.0, 1.0, 10, seed=8)


class TestBrownianMotion:
    def test_covariance_is_min(self):
        bm = brownian_motion([0.5, 1.0], 1_000_000, seed=9)
        prod = float(np.mean(bm.values[:, 0] * bm.values[:, 1]))
        assert prod == pytest.approx(0.5, abs=0.01)

    def test_variance_at_time(self):
        bm = brownian_motion([0.7], 500_000, seed=10)
        assert float(bm.values[:, 0].var()) == pytest.approx(0.7, abs=0.01)

    def test_single_time_is_gaussian(self):
        bm = brownian_motion([0.9], 100_000, seed=11)
        g = make_law("gaussian", m=0.0, sigma=math.sqrt(0.9))
        assert ks_statistic_vs_cdf(bm.values[:, 0], g.law.cdf) < ks_critical(
            100_000, 0.01
        )

    def test_increment_law_and_independence(self):
        bm = brownian_motion([0.5, 1.25], 100_000, seed=12)
        inc = bm.values[:, 1] - bm.values[:, 0]
        g = make_law("gaussian", m=0.0, sigma=math.sqrt(0.75))
        assert ks_statistic_vs_cdf(inc, g.law.cdf) < ks_critical(100_000, 0.01)
        dev = independence_factorization_test(
            np.column_stack([bm.values[:, 0], inc]), [0.5, 1.0, 2.0], [0.5, 1.0, 2.0]
        )
        assert dev < 0.02

    def test_increment_additivity_telescopes(self):
        bm = brownian_motion([0.3, 0.9, 1.7], 1_000, seed=13)
        v = bm.values
        lhs = v[:, 2] - v[:, 0]
        rhs = (v[:, 2] - v[:, 1]) + (v[:, 1] - v[:, 0])
        # telescoping construction identity, up to float re-association
        assert np.abs(lhs - rhs).max() < 1e-12

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            brownian_motion([0.0, 1.0], 10, seed=14)
        with pytest.raises(DomainError):
            brownian_motion([1.0, 0.5], 10, seed=15)


class TestGaussianProcess:
    def test_min_kernel_matches_brownian_in_law(self):
        grid = [0.5, 1.0]
        gp = gaussian_process(lambda t: 0.0, lambda s, t: min(s, t), grid, 100_000, seed=16)
        bm = brownian_motion(grid, 100_000, seed=17)
        n = 100_000
        for j in range(2):
            assert ks_two_sample(gp.values[:, j], bm.values[:, j]) < 2.5 / math.sqrt(n)
        cov = float(np.mean(gp.values[:, 0] * gp.values[:, 1]))
        assert cov == pytest.approx(0.5, abs=0.02)

    def test_constant_kernel_is_single_draw(self):
        gp = gaussian_process(lambda t: 0.0, lambda s, t: 1.0, [0.1, 0.5, 2.0], 500, seed=18)
        spread = np.abs(gp.values - gp.values[:, :1]).max()
        assert spread < 1e-6

    def test_white_noise_coordinates_independent(self):
        gp = gaussian_process(
            lambda t: 0.0, lambda s, t: 1.0 if s == t else 0.0, [0.5, 1.0], 100_000,
            seed=19,
        )
        dev = independence_factorization_test(gp.values, [0.5, 1.5], [0.5, 1.5])
        assert dev < 0.02

    def test_non_psd_kernel_rejected(self):
        with pytest.raises(NotPositiveSemidefinite):
            gaussian_process(
                lambda t: 0.0,
                lambda s, t: 1.0 if s != t else 0.0,  # off-diagonal 1s, zero diagonal
                [0.5, 1.0],
                10,
                seed=20,
            )


def test_copula_reconstruction_identity_21x21():
    # independent pair with different catalog margins
    g = make_law("gaussian", m=0.0, sigma=1.0)
    e = make_law("exponential", b=1.0)
    f1 = lambda x: float(g.law.cdf(x))
    f2 = lambda x: float(e.law.cdf(x))
    joint = lambda x, y: f1(x) * f2(y)
    c = sklar_copula(joint, f1, f2)
    us = np.linspace(0.0, 1.0, 21)
    worst = max(abs(c(u, v) - u * v) for u in us for v in us)
    assert worst < 1e-9
