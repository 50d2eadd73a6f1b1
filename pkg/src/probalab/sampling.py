"""Uniform-stream transformations used by every sampler.

All randomness in the package is drawn from a numpy Generator seeded
per call, so every run is reproducible from its seed. Normals use
Box-Muller pairs (no rejection), gammas use Marsaglia-Tsang on top of
the same stream.
"""

from __future__ import annotations

import numpy as np


def rng_from_seed(seed):
    return np.random.default_rng(seed)


def uniform_open(rng, n):
    """Uniforms in (0, 1]; avoids log(0) in inverse transforms."""
    return 1.0 - rng.random(n)


def box_muller(rng, n):
    """n standard normals from Box-Muller pairs."""
    m = (n + 1) // 2
    u1 = uniform_open(rng, m)
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])
    return z[:n]


def exponential_std(rng, n):
    return -np.log(uniform_open(rng, n))


def gamma_std(rng, n, a):
    """n draws from gamma(a, rate 1), a > 0 (Marsaglia-Tsang)."""
    if a < 1.0:
        # boost: gamma(a) = gamma(a+1) * U^(1/a)
        g = gamma_std(rng, n, a + 1.0)
        u = uniform_open(rng, n)
        return g * u ** (1.0 / a)
    d = a - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    out = np.empty(n)
    filled = 0
    while filled < n:
        todo = n - filled
        m = max(64, int(todo * 1.2))
        x = box_muller(rng, m)
        v = (1.0 + c * x) ** 3
        u = uniform_open(rng, m)
        ok = v > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            accept = ok & (np.log(u) < 0.5 * x * x + d - d * v + d * np.log(np.where(ok, v, 1.0)))
        draws = d * v[accept]
        take = min(todo, draws.size)
        out[filled : filled + take] = draws[:take]
        filled += take
    return out


def discrete_inverse(rng, n, cumprobs, atoms):
    """Inverse-transform sampling from a finite atom table."""
    u = rng.random(n)
    idx = np.searchsorted(cumprobs, u, side="left")
    idx = np.minimum(idx, len(atoms) - 1)
    return np.asarray(atoms)[idx]
