"""Rational approximations for the standard normal cdf and quantile.

`proba_normale` and `inverse_loi_normal` are bit-faithful ports of
legacy Visual Basic routines: same coefficients, same branch
structure, and the same +-4 clamps outside (0, 1) for the quantile. `phi_oracle` is the package's reference Phi, an adaptive
quadrature of the density at tolerance 1e-12, used to validate the
approximations and as the comparison cdf in the limit-theorem lab.

Measured against phi_oracle before freezing: |proba_normale - Phi| <
1e-7 on [-8, 8] and |inverse_loi_normal - Phi^-1| < 5e-4 on
[0.001, 0.999]; the ports themselves claim no error bound.
"""

from __future__ import annotations

import math

import numpy as np

from .quadrature import adaptive_simpson

CDF_COEFFS = (0.31938153, -0.356563782, 1.781477937, -1.821255978, 1.330274429)
CDF_W_SCALE = 0.2316419
CDF_KERNEL = 0.39894228
QUANTILE_NUM = (2.515517, 0.802853, 0.010328)
QUANTILE_DEN = (1.432788, 0.189269, 0.001308)
QUANTILE_CLAMP = 4.0


def proba_normale(z):
    """Approximate P(N(0,1) <= z)."""
    a1, a2, a3, a4, a5 = CDF_COEFFS
    w1 = abs(z)
    w = 1.0 / (1.0 + CDF_W_SCALE * w1)
    w1 = CDF_KERNEL * math.exp(-0.5 * w1 * w1)
    p0 = a3 + w * (a4 + a5 * w)
    p0 = w * (a1 + w * (a2 + w * p0))
    p0 = w1 * p0
    if z <= 0:
        p0 = 1.0 - p0
    return 1.0 - p0


def inverse_loi_normal(u):
    """Approximate quantile of N(0,1); clamps to -4 / +4 outside (0,1)."""
    a1, a2, a3 = QUANTILE_NUM
    a4, a5, a6 = QUANTILE_DEN
    if u <= 0:
        return -QUANTILE_CLAMP
    if u >= 1:
        return QUANTILE_CLAMP
    q = 0.5 - abs(u - 0.5)
    w = math.sqrt(-2.0 * math.log(q))
    w1 = a1 + w * (a2 + a3 * w)
    w2 = 1.0 + w * (a4 + w * (a5 + a6 * w))
    sign = 0.0 if u == 0.5 else math.copysign(1.0, u - 0.5)
    return (w - w1 / w2) * sign


def _density(t):
    return np.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)


def phi_oracle(z, tol=1e-12):
    """Reference Phi(z) by adaptive quadrature of the density.

    Built as 0.5 + int_0^z, so phi_oracle(-z) = 1 - phi_oracle(z) to
    rounding.
    """
    z = float(z)
    if z == 0.0:
        return 0.5
    if z < 0.0:
        return 1.0 - phi_oracle(-z, tol=tol)
    return 0.5 + adaptive_simpson(_density, 0.0, min(z, 42.0), tol=tol)


def phi_oracle_inverse(u, tol=1e-12):
    """Bisection inverse of phi_oracle on (0, 1)."""
    if not 0.0 < u < 1.0:
        raise ValueError("need 0 < u < 1")
    lo, hi = -10.0, 10.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if phi_oracle(mid, tol=tol) >= u:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
