"""Generalized inverses, copulas, coherence, and path constructions.

Brownian paths are built by cumulating independent Gaussian
increments (O(k) per path); `gaussian_process` provides the
covariance-matrix route over the same grid so the two constructions
can cross-validate each other. Poisson paths cumulate exponential
inter-arrivals in blocks, extending on demand up to a hard cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    IncoherentFamily,
    NotPositiveSemidefinite,
    SaturationError,
)
from .gaussvec import GaussianVector, eigendecompose
from .sampling import box_muller, exponential_std, rng_from_seed

_NUDGE = 1e-12  # right-limit nudge for F^{-1}(s + 0)


def gen_inverse(cdf, u, lo=-1.0, hi=1.0, tol=1e-12):
    """Generalized inverse inf{x : cdf(x) >= u} by expanding bisection.

    The initial bracket [lo, hi] grows geometrically until it
    straddles the level u; Lemma (A) cdf(result) >= u holds at the
    returned point up to the bisection tolerance.
    """
    if not 0.0 < u < 1.0:
        raise DomainError("gen_inverse needs 0 < u < 1")
    lo = float(lo)
    hi = float(hi)
    step = max(1.0, hi - lo)
    while cdf(lo) >= u:
        lo -= step
        step *= 2.0
        if lo < -1e30:
            raise DomainError("could not bracket the quantile from below")
    step = max(1.0, hi - lo)
    while cdf(hi) < u:
        hi += step
        step *= 2.0
        if hi > 1e30:
            raise DomainError("could not bracket the quantile from above")
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if cdf(mid) >= u:
            hi = mid
        else:
            lo = mid
    return hi


def sklar_copula(joint_cdf, marg1, marg2, lo=-50.0, hi=50.0):
    """The copula C(s1, s2) = F(F1^{-1}(s1+0), F2^{-1}(s2+0)).

    marg1/marg2 are marginal cdfs (callables). Right limits are taken
    with a +1e-12 nudge before inverting, which is immaterial for
    continuous margins (where the copula is unique).
    """

    def copula(s1, s2):
        s1 = float(s1)
        s2 = float(s2)
        for s in (s1, s2):
            if not 0.0 <= s <= 1.0:
                raise DomainError("copula arguments live in [0, 1]")
        if s1 in (0.0, 1.0) or s2 in (0.0, 1.0):
            # uniform-margin boundary behavior
            if s1 == 0.0 or s2 == 0.0:
                return 0.0
            return s1 if s2 == 1.0 else s2
        x1 = gen_inverse(marg1, min(s1 + _NUDGE, 1.0 - _NUDGE), lo, hi)
        x2 = gen_inverse(marg2, min(s2 + _NUDGE, 1.0 - _NUDGE), lo, hi)
        return float(joint_cdf(x1, x2))

    return copula


@dataclass(frozen=True)
class FiniteDimFamily:
    """Map from ordered time tuples to (mean vector, covariance matrix).

    Tuples are canonicalized to sorted order with the permutation
    applied to the entries, which implements the permutation coherence
    condition once at construction instead of per query.
    """

    entries: dict

    def __init__(self, entries):
        canon = {}
        for times, (mean, cov) in entries.items():
            times = tuple(float(t) for t in times)
            mean = np.asarray(mean, dtype=float)
            cov = np.asarray(cov, dtype=float)
            if mean.size != len(times) or cov.shape != (len(times), len(times)):
                raise DomainError(f"shape mismatch for tuple {times}")
            order = np.argsort(times, kind="stable")
            key = tuple(times[i] for i in order)
            canon[key] = (mean[order], cov[np.ix_(order, order)])
        object.__setattr__(self, "entries", canon)

    @classmethod
    def from_functions(cls, mean_fn, cov_fn, tuples):
        entries = {}
        for times in tuples:
            times = tuple(float(t) for t in times)
            m = np.array([mean_fn(t) for t in times])
            c = np.array([[cov_fn(s, t) for t in times] for s in times])
            entries[times] = (m, c)
        return cls(entries)

    def law(self, times):
        return self.entries[tuple(sorted(float(t) for t in times))]


def coherence_check(family, pairs, tol=1e-12):
    """Marginalization coherence on (U, S) tuple pairs, U subset of S.

    For Gaussian entries the S-law pushed through the projection onto
    U is the sub-block law; any mismatch names the offending pair.
    """
    checked = []
    for u_times, s_times in pairs:
        u_key = tuple(sorted(float(t) for t in u_times))
        s_key = tuple(sorted(float(t) for t in s_times))
        if not set(u_key) <= set(s_key):
            raise DomainError(f"{u_key} is not a subset of {s_key}")
        mean_u, cov_u = family.law(u_key)
        mean_s, cov_s = family.law(s_key)
        idx = [s_key.index(t) for t in u_key]
        gap_mean = float(np.abs(mean_s[idx] - mean_u).max())
        gap_cov = float(np.abs(cov_s[np.ix_(idx, idx)] - cov_u).max())
        if gap_mean > tol or gap_cov > tol:
            raise IncoherentFamily(
                f"tuple pair U={u_key}, S={s_key}: mean gap {gap_mean:.3e}, "
                f"cov gap {gap_cov:.3e}"
            )
        checked.append((u_key, s_key))
    return {"pairs_checked": len(checked), "passed": True}


@dataclass(frozen=True)
class PathSample:
    """Trajectories on a fixed time grid (or event times for Poisson)."""

    times: np.ndarray
    values: np.ndarray  # (n_paths, len(times))
    meta: dict = field(default_factory=dict)


def poisson_process(theta, horizon, n_paths, seed, grid=None, hard_cap=10_000_000):
    """Standard Poisson process of intensity theta on [0, horizon].

    Inter-arrivals are Exp(theta) drawn in blocks of ceil(2 theta
    horizon) per path and extended on demand; a path needing more than
    hard_cap arrivals raises SaturationError. Returns counts N_t on
    the grid plus the raw arrival times.
    """
    if theta <= 0 or horizon <= 0:
        raise DomainError("poisson_process needs theta > 0 and horizon > 0")
    rng = rng_from_seed(seed)
    block = max(4, int(math.ceil(2.0 * theta * horizon)))
    if block > hard_cap:
        raise SaturationError(
            f"theta * horizon needs {block} arrivals per block, above the cap {hard_cap}"
        )
    if grid is None:
        grid = np.linspace(0.0, horizon, 11)[1:]
    grid = np.asarray(grid, dtype=float)
    if grid.size and (grid.min() <= 0 or grid.max() > horizon):
        raise DomainError("grid must lie in (0, horizon]")
    inc = exponential_std(rng, n_paths * block).reshape(n_paths, block) / theta
    cum = np.cumsum(inc, axis=1)
    while (cum[:, -1] < horizon).any():
        if cum.shape[1] + block > hard_cap:
            raise SaturationError(
                f"a path exceeded {hard_cap} arrivals before the horizon"
            )
        extra = exponential_std(rng, n_paths * block).reshape(n_paths, block) / theta
        cum = np.concatenate([cum, cum[:, -1:] + np.cumsum(extra, axis=1)], axis=1)
    counts = np.empty((n_paths, grid.size))
    for j, g in enumerate(grid):
        counts[:, j] = (cum <= g).sum(axis=1)
    # unconditional mean of the drawn inter-arrival gaps (~ 1/theta);
    # restricting to gaps landing inside the horizon would bias it low
    mean_interarrival = float(inc.mean())
    return PathSample(
        times=grid,
        values=counts,
        meta={
            "theta": theta,
            "horizon": horizon,
            "arrival_cumsums": cum,
            "mean_interarrival": mean_interarrival,
            "seed": seed,
        },
    )


def brownian_motion(grid, n_paths, seed):
    """Brownian paths by increment cumulation on a strictly increasing grid.

    Increment over (t_{i-1}, t_i] is centered Gaussian with variance
    t_i - t_{i-1} (t_0 = 0, B_0 = 0), so Cov(B_s, B_t) = min(s, t).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or grid[0] <= 0 or (np.diff(grid) <= 0).any():
        raise DomainError("grid must be strictly increasing with positive times")
    rng = rng_from_seed(seed)
    stds = np.sqrt(np.diff(np.concatenate([[0.0], grid])))
    z = box_muller(rng, n_paths * grid.size).reshape(n_paths, grid.size)
    paths = np.cumsum(z * stds, axis=1)
    return PathSample(times=grid, values=paths, meta={"seed": seed})


def gaussian_process(mean_fn, cov_fn, grid, n_paths, seed):
    """Finite-dimensional Gaussian process sampling on a grid.

    The Gram matrix of cov_fn must be positive semidefinite (checked
    through the eigendecomposition); sampling then delegates to
    GaussianVector on the grid coordinates.
    """
    grid = np.asarray(grid, dtype=float)
    mean = np.array([mean_fn(t) for t in grid])
    gram = np.array([[cov_fn(s, t) for t in grid] for s in grid])
    gram = 0.5 * (gram + gram.T)
    t_mat, delta = eigendecompose(gram)
    scale = max(1.0, float(np.abs(delta).max()) if delta.size else 1.0)
    if (delta < -1e-10 * scale).any():
        raise NotPositiveSemidefinite(
            f"covariance function produced eigenvalue {delta.min():.3e}"
        )
    # project onto the PSD cone so rounding-level negatives cannot trip
    # the stricter GaussianVector clamp
    psd = t_mat.T @ np.diag(np.maximum(delta, 0.0)) @ t_mat
    psd = 0.5 * (psd + psd.T)
    gv = GaussianVector(mean, psd)
    values = gv.sample(n_paths, seed)
    return PathSample(times=grid, values=values, meta={"seed": seed})
