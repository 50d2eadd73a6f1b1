"""Characteristic functions: algebra, inversion, independence tests.

The inversion integrals are oscillatory, so they use fixed Simpson
panels whose width is tied to the phase of the kernel rather than an
adaptive error estimate; the removable u = 0 singularity of the cdf
kernel is patched with its Taylor value b - a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAbsolutelyContinuous, QuadratureFailure, GridTooCoarse
from .quadrature import simpson_panels

U_CAP = 2**16  # hard cutoff cap for auto-converged inversions


@dataclass(frozen=True)
class CharFn:
    """A characteristic function u -> E exp(iuX) plus metadata.

    integrable_modulus marks that int |phi| du < inf is known, which
    is the admission ticket for density inversion.
    """

    eval: object
    closed_form_tag: str | None = None
    integrable_modulus: bool = False

    def __call__(self, u):
        return np.asarray(self.eval(np.asarray(u, dtype=float)), dtype=complex)


def cf_of_sum(phis):
    """cf of a sum of independent variables: the pointwise product."""
    phis = list(phis)
    if not phis:
        raise ValueError("need at least one characteristic function")
    if len(phis) == 1:
        return phis[0]

    def product(u):
        out = phis[0](u)
        for phi in phis[1:]:
            out = out * phi(u)
        return out

    return CharFn(
        product,
        closed_form_tag=None,
        integrable_modulus=any(p.integrable_modulus for p in phis),
    )


def cf_affine(phi, scale, shift):
    """cf of scale*X + shift: u -> exp(i*shift*u) phi(scale*u)."""

    def affine(u):
        u = np.asarray(u, dtype=float)
        return np.exp(1j * shift * u) * phi(scale * u)

    return CharFn(affine, integrable_modulus=phi.integrable_modulus and scale != 0)


def cf_empirical(samples):
    """Empirical cf (1/N) sum exp(iuX_k), no smoothing."""
    x = np.asarray(samples, dtype=float)

    def emp(u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        out = np.exp(1j * np.outer(u, x)).mean(axis=1)
        return out if out.size > 1 else out[0]

    return CharFn(emp, closed_form_tag="empirical")


def _panel_width(a, b):
    # phase of exp(-iau), exp(-ibu) stays small across one panel
    return min(0.1, np.pi / (10.0 * (abs(a) + abs(b)) + 1.0))


def invert_cdf_difference(phi, a, b, cutoff):
    """Truncated inversion integral J_U(a, b).

    (1/2pi) int_{-U}^{U} (e^{-iau} - e^{-ibu})/(iu) phi(u) du; as the
    cutoff grows this converges to F(b-) - F(a) + (jump at a)/2 +
    (jump at b)/2. Exactly antisymmetric under swapping a and b.
    """
    if a == b:
        return 0.0
    if a > b:
        return -invert_cdf_difference(phi, b, a, cutoff)

    def integrand(u):
        u = np.asarray(u, dtype=float)
        small = np.abs(u) < 1e-8
        safe = np.where(small, 1.0, u)
        kernel = (np.exp(-1j * a * safe) - np.exp(-1j * b * safe)) / (1j * safe)
        kernel = np.where(small, b - a, kernel)
        return kernel * phi(u)

    val = simpson_panels(integrand, -cutoff, cutoff, _panel_width(a, b))
    return float(val.real) / (2.0 * np.pi)


def invert_density(phi, x, cutoff, return_imag=False):
    """Density at x from an integrable cf: (1/2pi) int e^{-ixu} phi(u) du.

    Raises NotAbsolutelyContinuous unless the cf is flagged with an
    integrable modulus. The imaginary part of the integral is a
    diagnostic (should be ~0 for a real law) and can be returned.
    """
    if not phi.integrable_modulus:
        raise NotAbsolutelyContinuous(
            "density inversion needs integrable |phi| (integrable_modulus=True)"
        )

    def integrand(u):
        u = np.asarray(u, dtype=float)
        return np.exp(-1j * x * u) * phi(u)

    width = min(0.1, np.pi / (10.0 * abs(x) + 1.0))
    val = simpson_panels(integrand, -cutoff, cutoff, width) / (2.0 * np.pi)
    if abs(val.imag) > 1e-6:
        raise QuadratureFailure(
            f"imaginary part {val.imag:.2e} too large; cf not conjugate-symmetric?"
        )
    if return_imag:
        return float(val.real), float(val.imag)
    return float(val.real)


def invert_density_grid(phi, xs, cutoff):
    """invert_density over a grid of points, sharing the u-grid work."""
    if not phi.integrable_modulus:
        raise NotAbsolutelyContinuous(
            "density inversion needs integrable |phi| (integrable_modulus=True)"
        )
    xs = np.asarray(xs, dtype=float)
    width = min(0.1, np.pi / (10.0 * np.max(np.abs(xs)) + 1.0))
    n_panels = max(1, int(np.ceil(2.0 * cutoff / width)))
    h = 2.0 * cutoff / n_panels
    out = np.zeros(xs.size, dtype=complex)
    chunk = max(1, 2_000_000 // max(1, xs.size))
    for start in range(0, n_panels, chunk):
        stop = min(start + chunk, n_panels)
        u0 = -cutoff + h * np.arange(start, stop)
        for offset, weight in ((0.0, 1.0), (0.5 * h, 4.0), (h, 1.0)):
            u = u0 + offset
            out += weight * (np.exp(-1j * np.outer(xs, u)) * phi(u)).sum(axis=1)
    out *= h / 6.0 / (2.0 * np.pi)
    return out.real


def converged_inversion(compute, rtol=1e-6, u_start=64.0):
    """Double the cutoff until two results differ by < rtol, cap 2^16."""
    cutoff = u_start
    prev = compute(cutoff)
    while cutoff < U_CAP:
        cutoff *= 2.0
        cur = compute(cutoff)
        if abs(cur - prev) < rtol:
            return cur, cutoff
        prev = cur
    return prev, cutoff


def convolve_densities(f, g, lo, hi, n=2001, norm_tol=1e-6):
    """Convolution (f * g)(z) = int f(z - x) g(x) dx on a uniform grid.

    Each grid value is an adaptive quadrature (robust to density
    jumps), and the gridded result must integrate to 1 within norm_tol
    over [lo, hi] (Simpson weights), else GridTooCoarse: the window or
    resolution cannot represent the convolution.
    """
    from .quadrature import adaptive_simpson

    if n < 5:
        raise GridTooCoarse("need at least 5 grid points")
    if n % 2 == 0:
        n += 1  # Simpson weights need an odd point count
    xs = np.linspace(lo, hi, n)
    vals = np.array(
        [
            adaptive_simpson(lambda t: np.asarray(f(z - t), dtype=float)
                             * np.asarray(g(t), dtype=float),
                             lo, hi, tol=1e-9)
            for z in xs
        ]
    )
    dx = xs[1] - xs[0]
    weights = np.ones(n)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    mass = float(vals @ weights) * dx / 3.0
    if abs(mass - 1.0) > norm_tol:
        raise GridTooCoarse(
            f"convolution mass {mass:.6f} misses 1 by more than {norm_tol}"
        )
    return xs, vals


def independence_factorization_test(pairs, u_grid, v_grid):
    """Max deviation |ecf_joint(u,v) - ecf_X(u) ecf_Y(v)| over a grid.

    Under independence the deviation is CLT-small (about 4/sqrt(N));
    dependence shows up as an O(1) gap.
    """
    xy = np.asarray(pairs, dtype=float)
    if xy.ndim != 2 or xy.shape[1] != 2:
        raise ValueError("pairs must be an (N, 2) array")
    x = xy[:, 0]
    y = xy[:, 1]
    u = np.asarray(u_grid, dtype=float)
    v = np.asarray(v_grid, dtype=float)
    ex = np.exp(1j * np.outer(u, x))  # (U, N)
    ey = np.exp(1j * np.outer(v, y))  # (V, N)
    joint = (ex @ ey.T) / x.size  # joint ecf on the (U, V) grid
    marg = np.outer(ex.mean(axis=1), ey.mean(axis=1))
    return float(np.abs(joint - marg).max())


def cf_numeric_moment(phi, k, h=1e-3):
    """Moment from cf derivatives at 0: E X^k = (-i)^k phi^(k)(0).

    Central differences with the given step; k in {1, 2}.
    """
    if k == 1:
        d1 = (phi(h) - phi(-h)) / (2.0 * h)
        return float((-1j * d1).real)
    if k == 2:
        d2 = (phi(h) - 2.0 * phi(0.0) + phi(-h)) / (h * h)
        return float((-d2).real)
    raise ValueError("k must be 1 or 2")
