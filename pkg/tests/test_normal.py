import numpy as np
import pytest

from probalab.normal import (
    CDF_COEFFS,
    CDF_KERNEL,
    CDF_W_SCALE,
    QUANTILE_CLAMP,
    QUANTILE_DEN,
    QUANTILE_NUM,
    inverse_loi_normal,
    phi_oracle,
    phi_oracle_inverse,
    proba_normale,
)


class TestProbaNormale:
    def test_center(self):
        assert proba_normale(0.0) == pytest.approx(0.5, abs=1e-7)

    def test_reference_point(self):
        assert proba_normale(1.96) == pytest.approx(0.9750021, abs=1e-6)

    def test_sign_branch_symmetry(self):
        assert proba_normale(-1.96) == pytest.approx(1.0 - proba_normale(1.96), abs=1e-7)

    def test_max_error_against_oracle(self):
        zs = np.linspace(-8.0, 8.0, 1601)
        err = max(abs(proba_normale(z) - phi_oracle(z)) for z in zs)
        assert err < 1e-7

    def test_monotone_on_grid(self):
        zs = np.linspace(-8.0, 8.0, 10_001)
        vals = [proba_normale(z) for z in zs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


class TestInverseLoiNormal:
    def test_median(self):
        assert abs(inverse_loi_normal(0.5)) < 5e-4

    def test_upper_tail_point(self):
        assert inverse_loi_normal(0.975) == pytest.approx(1.960, abs=5e-4)

    def test_clamps_exact(self):
        assert inverse_loi_normal(0.0) == -4.0
        assert inverse_loi_normal(-3.0) == -4.0
        assert inverse_loi_normal(1.0) == 4.0
        assert inverse_loi_normal(7.0) == 4.0

    def test_max_error_against_bisection_oracle(self):
        us = np.linspace(0.001, 0.999, 333)
        err = max(abs(inverse_loi_normal(u) - phi_oracle_inverse(u, tol=1e-10)) for u in us)
        assert err < 5e-4

    def test_roundtrip_composition(self):
        for z in np.linspace(-3.0, 3.0, 61):
            assert inverse_loi_normal(proba_normale(z)) == pytest.approx(z, abs=2e-3)


class TestPhiOracle:
    def test_center_and_tails(self):
        assert phi_oracle(0.0) == 0.5
        assert phi_oracle(8.0) == pytest.approx(1.0, abs=1e-14)
        assert phi_oracle(-8.0) == pytest.approx(0.0, abs=1e-14)

    def test_symmetry(self):
        for z in (0.3, 1.0, 2.5, 6.0):
            assert phi_oracle(-z) == pytest.approx(1.0 - phi_oracle(z), abs=1e-14)

    def test_inverse_roundtrip(self):
        assert phi_oracle_inverse(0.8413447460685429) == pytest.approx(1.0, abs=1e-8)


def test_coefficient_fidelity():
    # the ported constants, verbatim
    assert CDF_COEFFS == (0.31938153, -0.356563782, 1.781477937, -1.821255978, 1.330274429)
    assert CDF_W_SCALE == 0.2316419
    assert CDF_KERNEL == 0.39894228
    assert QUANTILE_NUM == (2.515517, 0.802853, 0.010328)
    assert QUANTILE_DEN == (1.432788, 0.189269, 0.001308)
    assert QUANTILE_CLAMP == 4.0
