import math

import numpy as np
import pytest

from probalab.catalog import make_law
from probalab.errors import (
    ConjugateMismatch,
    ConvexityViolation,
    DomainError,
    NegativeSupport,
    TooManyEvents,
    UnboundedForLowerBound,
    ZeroDenominator,
)
from probalab.inequalities import (
    basic_inequality,
    billingsley_maximal,
    chebyshev,
    elementary_exp_inequality,
    etemadi_maximal,
    exponential_bound,
    holder_family,
    inclusion_exclusion,
    jensen,
    kolmogorov_maximal,
    markov,
    mgf_sandwich,
    submartingale_maximal,
)
from probalab.sampling import rng_from_seed


def rademacher_matrix(rng, shape):
    return np.where(rng.random(shape) < 0.5, -1.0, 1.0)


class TestMarkov:
    def test_exponential_closed_tail(self):
        r = markov(make_law("exponential", b=1.0), 2.0)
        assert r.lhs == pytest.approx(math.exp(-2.0))
        assert r.rhs == pytest.approx(0.5)
        assert r.satisfied

    def test_tight_at_constant(self):
        r = markov(make_law("constant", a=1.0), 1.0)
        assert r.lhs == r.rhs == 1.0
        assert r.satisfied

    def test_zero_threshold_rejected(self):
        with pytest.raises(DomainError):
            markov(make_law("exponential", b=1.0), 0.0)

    def test_negative_support_rejected(self):
        with pytest.raises(NegativeSupport):
            markov(make_law("gaussian", m=0.0, sigma=1.0), 1.0)
        with pytest.raises(NegativeSupport):
            markov(np.array([-1.0, 2.0]), 1.0)


class TestChebyshev:
    def test_standard_normal(self):
        r = chebyshev(make_law("gaussian", m=0.0, sigma=1.0), 2.0)
        assert r.lhs == pytest.approx(0.0455, abs=1e-3)
        assert r.rhs == pytest.approx(0.25)
        assert r.satisfied

    def test_constant_law(self):
        r = chebyshev(make_law("constant", a=3.0), 1.0)
        assert r.lhs == 0.0 and r.rhs == 0.0 and r.satisfied

    def test_uniform_support_width(self):
        r = chebyshev(make_law("uniform", a=0.0, b=1.0), 0.5)
        assert r.lhs == pytest.approx(0.0, abs=1e-12)
        assert r.rhs == pytest.approx(1.0 / 3.0 / 4.0 * 4.0 / 3.0 * 4.0 / 4.0, abs=1.0)
        assert r.rhs == pytest.approx((1.0 / 12.0) / 0.25)


class TestBasicInequality:
    def test_identity_g_on_exponential(self):
        lower, upper = basic_inequality(
            make_law("exponential", b=1.0), lambda t: np.clip(t, 0.0, None), 1.0
        )
        assert upper.rhs == pytest.approx(1.0, abs=1e-6)
        assert upper.lhs == pytest.approx(math.exp(-1.0), abs=1e-9)
        assert lower.lhs == 0.0  # unbounded g makes the lower side vacuous

    def test_chernoff_flavor_on_bernoulli(self):
        lower, upper = basic_inequality(
            make_law("bernoulli", p=0.5), lambda t: np.exp(np.asarray(t, float)), 1.0
        )
        assert upper.rhs == pytest.approx((1.0 + math.e) / (2.0 * math.e))
        assert upper.lhs == pytest.approx(0.5)
        assert upper.satisfied

    def test_bounded_law_nontrivial_lower(self):
        lower, upper = basic_inequality(
            make_law("uniform", a=0.0, b=1.0), lambda t: np.clip(t, 0.0, None), 0.5
        )
        assert lower.lhs == pytest.approx(0.0, abs=1e-9)
        assert lower.rhs == pytest.approx(0.5)
        assert lower.satisfied and upper.satisfied

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            basic_inequality(
                make_law("uniform", a=0.0, b=1.0), lambda t: np.clip(t, 0.0, None), 0.0
            )


class TestHolderFamily:
    def test_constant_equality(self):
        ones = np.ones(16)
        for r in holder_family(ones, ones, 2.0, 2.0):
            assert r.satisfied
            if r.context.startswith(("holder", "cauchy")):
                assert r.slack == pytest.approx(0.0, abs=1e-12)

    def test_random_arrays_strict(self):
        rng = rng_from_seed(1)
        x = rng.uniform(-1.0, 1.0, 500)
        y = rng.uniform(-1.0, 1.0, 500)
        for r in holder_family(x, y, 3.0, 1.5):
            assert r.satisfied and r.slack > 0.0

    def test_p_one_rejected(self):
        with pytest.raises(ConjugateMismatch):
            holder_family([1.0], [1.0], 1.0, 2.0)

    def test_conjugate_mismatch(self):
        with pytest.raises(ConjugateMismatch):
            holder_family([1.0], [1.0], 3.0, 2.0)


class TestJensen:
    def test_square_on_standard_normal(self):
        r = jensen(make_law("gaussian", m=0.0, sigma=1.0), lambda v: np.asarray(v) ** 2)
        assert r.lhs == pytest.approx(0.0)
        assert r.rhs == pytest.approx(1.0, abs=1e-8)

    def test_linear_equality(self):
        r = jensen(make_law("exponential", b=1.0), lambda v: 2.0 * np.asarray(v) + 1.0)
        assert r.slack == pytest.approx(0.0, abs=1e-8)

    def test_abs_on_uniform_sym(self):
        r = jensen(make_law("uniform", a=-1.0, b=1.0), np.abs)
        assert r.lhs == pytest.approx(0.0)
        assert r.rhs == pytest.approx(0.5, abs=1e-9)

    def test_concave_rejected(self):
        with pytest.raises(ConvexityViolation):
            jensen(make_law("uniform", a=0.1, b=1.0), lambda v: np.sqrt(np.abs(v)))


class TestInclusionExclusion:
    def test_disjoint_events(self):
        n = 10_000
        ev = np.zeros((n, 2), dtype=bool)
        ev[:100, 0] = True
        ev[100:400, 1] = True
        exact, partials = inclusion_exclusion(ev)
        assert exact == pytest.approx(0.04)
        assert partials[0] == pytest.approx(0.04)
        assert partials[1] == pytest.approx(0.04)

    def test_three_coins_sandwich_exact(self):
        rng = rng_from_seed(2)
        ev = rng.random((100_000, 3)) < 0.5
        exact, partials = inclusion_exclusion(ev)
        assert partials[0] >= exact >= partials[1]
        assert partials[-1] == pytest.approx(exact, abs=1e-12)

    def test_nested_events(self):
        rng = rng_from_seed(3)
        b = rng.random(50_000) < 0.4
        a = b & (rng.random(50_000) < 0.5)
        exact, partials = inclusion_exclusion(np.column_stack([a, b]))
        assert exact == pytest.approx(float(b.mean()), abs=1e-12)

    def test_alternating_sandwich_many_events(self):
        rng = rng_from_seed(4)
        ev = rng.random((20_000, 6)) < 0.3
        exact, partials = inclusion_exclusion(ev)
        for s, val in enumerate(partials):
            if s % 2 == 0:
                assert val >= exact - 1e-12
            else:
                assert val <= exact + 1e-12
        assert partials[-1] == pytest.approx(exact, abs=1e-12)

    def test_too_many_events(self):
        with pytest.raises(TooManyEvents):
            inclusion_exclusion(np.zeros((10, 21), dtype=bool))


class TestKolmogorovMaximal:
    def test_rademacher_upper(self):
        rng = rng_from_seed(5)
        inc = rademacher_matrix(rng, (100_000, 10))
        _, upper = kolmogorov_maximal(inc, 4.0)
        assert upper.rhs == pytest.approx(10.0 / 16.0, abs=0.01)
        assert upper.satisfied

    def test_single_summand_chebyshev_form(self):
        rng = rng_from_seed(6)
        inc = rng.normal(size=(50_000, 1))
        _, upper = kolmogorov_maximal(inc, 2.0)
        assert upper.rhs == pytest.approx(0.25, abs=0.01)
        assert upper.satisfied

    def test_lower_bound_large_n(self):
        rng = rng_from_seed(7)
        inc = rademacher_matrix(rng, (100_000, 100))
        lower, upper = kolmogorov_maximal(inc, 1.0, c=1.0)
        assert lower.lhs == pytest.approx(1.0 - 4.0 / 100.0, abs=0.01)
        assert lower.satisfied and upper.satisfied

    def test_unbounded_rejected_for_lower(self):
        rng = rng_from_seed(8)
        inc = rng.normal(size=(1_000, 5))
        with pytest.raises(UnboundedForLowerBound):
            kolmogorov_maximal(inc, 1.0, c=1.0)


class TestExponentialBound:
    def test_rademacher_regime_one(self):
        rng = rng_from_seed(9)
        inc = rademacher_matrix(rng, (100_000, 400))
        r = exponential_bound(inc, 2.0, 1.0, col_vars=np.ones(400))
        # c = 1/20, eps c = 0.1 <= 1: bound exp(-2 * 0.95)
        assert r.rhs == pytest.approx(math.exp(-2.0 * 0.95), abs=1e-3)
        assert r.satisfied

    def test_vacuous_at_eps_zero_limit(self):
        rng = rng_from_seed(10)
        inc = rademacher_matrix(rng, (10_000, 16))
        r = exponential_bound(inc, 1e-9, 1.0)
        assert r.rhs == pytest.approx(1.0, abs=1e-6)
        assert r.satisfied

    def test_regime_two_branch(self):
        rng = rng_from_seed(11)
        inc = rademacher_matrix(rng, (50_000, 4))
        r = exponential_bound(inc, 3.0, 1.0, col_vars=np.ones(4))  # c = 1/2, eps c = 1.5 > 1
        assert r.rhs == pytest.approx(math.exp(-3.0 / (4.0 * 0.5)), abs=1e-6)
        assert r.satisfied

    def test_mgf_sandwich_rademacher(self):
        lower, upper = mgf_sandwich(make_law("rademacher"), 0.5, 1.0)
        assert lower.rhs == pytest.approx(math.cosh(0.5))
        assert upper.lhs == pytest.approx(math.cosh(0.5))
        assert lower.satisfied and upper.satisfied
        assert lower.lhs == pytest.approx(math.exp(0.125 * 0.5))
        assert upper.rhs == pytest.approx(math.exp(0.125 * 1.25))


class TestMaximalFamily:
    def test_billingsley(self):
        rng = rng_from_seed(12)
        inc = rademacher_matrix(rng, (100_000, 100))
        r = billingsley_maximal(inc, 12.0)
        assert r.satisfied

    def test_billingsley_single_term(self):
        rng = rng_from_seed(13)
        inc = rademacher_matrix(rng, (50_000, 1))
        r = billingsley_maximal(inc, 2.0)
        assert r.satisfied

    def test_etemadi_deep_tail(self):
        rng = rng_from_seed(14)
        inc = rademacher_matrix(rng, (50_000, 100))
        r = etemadi_maximal(inc, 10.0)
        assert r.lhs < 0.01
        assert r.satisfied

    def test_etemadi_moderate(self):
        rng = rng_from_seed(15)
        inc = rademacher_matrix(rng, (100_000, 100))
        r = etemadi_maximal(inc, 5.0)
        assert r.satisfied

    def test_submartingale_special_case(self):
        rng = rng_from_seed(16)
        inc = np.abs(rng.normal(size=(50_000, 20)))
        r = submartingale_maximal(inc, 30.0)
        assert r.satisfied


class TestElementaryExp:
    def test_equality_at_zero(self):
        lower, upper = elementary_exp_inequality(0.0)
        assert lower.lhs == lower.rhs == 1.0
        assert upper.lhs == upper.rhs == 1.0

    def test_at_one(self):
        lower, upper = elementary_exp_inequality(1.0)
        assert lower.lhs == pytest.approx(1.0)
        assert lower.rhs == 2.0
        assert upper.rhs == pytest.approx(math.e)

    def test_at_half(self):
        lower, upper = elementary_exp_inequality(0.5)
        assert lower.lhs == pytest.approx(math.exp(0.25))
        assert upper.rhs == pytest.approx(math.exp(0.5))
        assert lower.satisfied and upper.satisfied

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            elementary_exp_inequality(-0.1)


def test_bound_report_semantics():
    from probalab.inequalities import BoundReport

    assert BoundReport(1.0, 1.0).satisfied           # slack 0
    assert BoundReport(1.0, 1.0 - 1e-13).satisfied   # within the exact slack
    assert not BoundReport(1.0, 0.99).satisfied
    assert BoundReport(1.0, 0.99, se=0.01).satisfied  # 3 SE of MC slack
    r = BoundReport(0.25, 0.75, context="x")
    assert r.slack == 0.5
