"""Scalar probability laws: discrete, absolutely continuous, mixtures.

A law carries its support endpoints (lep, uep), a mass or density
function and a cdf. Laws are immutable and safe to share. Moments with
an undefined value (Cauchy mean, Student variance for n <= 2, ...)
are represented by None and every consumer must refuse them instead
of propagating NaN.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DivergentTail,
    InvalidOrder,
    NonNegativityViolation,
    TruncationWarning,
    UndefinedMomentError,
    UnsupportedComponent,
)
from .quadrature import integrate

TAIL_TOL = 1e-12


@dataclass(frozen=True)
class Moments:
    """Closed-form moments of a law; None marks an undefined moment."""

    mean: float | None
    variance: float | None
    raw_moments: dict = field(default_factory=dict)
    abs_moments: dict = field(default_factory=dict)

    @property
    def std(self):
        if self.variance is None:
            return None
        return float(np.sqrt(self.variance))

    def require_mean(self, context=""):
        if self.mean is None:
            raise UndefinedMomentError(f"mean does not exist {context}".strip())
        return self.mean

    def require_variance(self, context=""):
        if self.variance is None:
            raise UndefinedMomentError(f"variance does not exist {context}".strip())
        return self.variance


class Law:
    """Mixin interface; see DiscreteLaw / ContinuousLaw / MixtureLaw.

    Concrete laws expose: kind, name, lep, uep, cdf, prob_ge, prob_gt.
    """

    kind = "abstract"

    def cdf(self, x):
        raise NotImplementedError

    def prob_gt(self, t):
        """P(X > t)."""
        raise NotImplementedError

    def prob_ge(self, t):
        """P(X >= t)."""
        raise NotImplementedError

    def prob_abs_ge(self, t):
        """P(|X| >= t); exact atom handling is overridden where needed."""
        if t <= 0:
            return 1.0
        return self.prob_ge(t) + float(self.cdf(-t))


@dataclass(frozen=True)
class DiscreteLaw(Law):
    """Finite (possibly truncated) atom table, atoms sorted ascending.

    Countable laws (Poisson, geometric, ...) are materialized up to a
    tail mass below TAIL_TOL; `truncated_mass` records the remainder.
    """

    name: str
    atoms: np.ndarray
    probs: np.ndarray
    truncated_mass: float = 0.0

    kind = "discrete"

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float)
        probs = np.asarray(self.probs, dtype=float)
        if atoms.ndim != 1 or atoms.shape != probs.shape:
            raise ValueError("atoms and probs must be 1-d arrays of equal length")
        if (probs < 0).any():
            raise ValueError("negative mass")
        order = np.argsort(atoms, kind="stable")
        object.__setattr__(self, "atoms", atoms[order])
        object.__setattr__(self, "probs", probs[order])
        object.__setattr__(self, "_cum", np.cumsum(probs[order]))

    @property
    def lep(self):
        return float(self.atoms[0])

    @property
    def uep(self):
        return float(self.atoms[-1]) if self.truncated_mass == 0.0 else np.inf

    def pmf(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.atoms, x)
        idx = np.minimum(idx, len(self.atoms) - 1)
        out = np.where(self.atoms[idx] == x, self.probs[idx], 0.0)
        return out if out.shape else float(out)

    density_or_mass = pmf

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.atoms, x, side="right")
        cum = np.concatenate([[0.0], self._cum])
        out = cum[idx]
        return out if out.shape else float(out)

    def prob_ge(self, t):
        idx = np.searchsorted(self.atoms, t, side="left")
        return float(self.probs[idx:].sum()) + self.truncated_mass

    def prob_gt(self, t):
        idx = np.searchsorted(self.atoms, t, side="right")
        return float(self.probs[idx:].sum()) + self.truncated_mass

    def prob_abs_ge(self, t):
        return float(self.probs[np.abs(self.atoms) >= t].sum()) + self.truncated_mass

    def quantile(self, u):
        """Generalized inverse inf{x : F(x) >= u}, left-continuous."""
        idx = np.searchsorted(self._cum, np.asarray(u, dtype=float), side="left")
        idx = np.minimum(idx, len(self.atoms) - 1)
        out = self.atoms[idx]
        return out if out.shape else float(out)

    def mean_exact(self):
        return float(self.atoms @ self.probs)

    def raw_moment_exact(self, k):
        return float((self.atoms**k) @ self.probs)

    def abs_moment_exact(self, k):
        return float((np.abs(self.atoms) ** k) @ self.probs)

    def truncated_mean_var(self, c):
        """Mean and variance of X 1_{|X| < c}."""
        keep = np.abs(self.atoms) < c
        m = float(self.atoms[keep] @ self.probs[keep])
        m2 = float((self.atoms[keep] ** 2) @ self.probs[keep])
        return m, m2 - m * m


@dataclass(frozen=True)
class ContinuousLaw(Law):
    """Absolutely continuous law given by a density and its cdf."""

    name: str
    density: object  # vectorized pdf
    cdf_fn: object  # vectorized cdf
    lep: float = -np.inf
    uep: float = np.inf

    kind = "abs_continuous"

    def pdf(self, x):
        return self.density(np.asarray(x, dtype=float))

    density_or_mass = pdf

    def cdf(self, x):
        return self.cdf_fn(np.asarray(x, dtype=float))

    def prob_ge(self, t):
        return 1.0 - float(self.cdf(t))

    prob_gt = prob_ge

    def truncated_mean_var(self, c):
        lo = max(self.lep, -c)
        hi = min(self.uep, c)
        if hi <= lo:
            return 0.0, 0.0
        m = integrate(lambda x: x * self.pdf(x), lo, hi, tol=1e-11)
        m2 = integrate(lambda x: x * x * self.pdf(x), lo, hi, tol=1e-11)
        return m, m2 - m * m


@dataclass(frozen=True)
class MixtureLaw(Law):
    """Convex mix of an absolutely continuous and a discrete part.

    The singular-continuous slot exists in the decomposition theory but
    is never constructible here: weight_sc must be exactly 0.
    """

    name: str
    weight_ac: float
    ac: ContinuousLaw
    discrete: DiscreteLaw
    weight_sc: float = 0.0

    kind = "mixture"

    def __post_init__(self):
        if self.weight_sc != 0.0:
            raise UnsupportedComponent(
                "singular-continuous components are not constructible"
            )
        if not 0.0 <= self.weight_ac <= 1.0:
            raise ValueError("weight_ac must lie in [0, 1]")

    @property
    def lep(self):
        return min(self.ac.lep, self.discrete.lep)

    @property
    def uep(self):
        return max(self.ac.uep, self.discrete.uep)

    def cdf(self, x):
        w = self.weight_ac
        return w * self.ac.cdf(x) + (1.0 - w) * self.discrete.cdf(x)

    def prob_ge(self, t):
        w = self.weight_ac
        return w * self.ac.prob_ge(t) + (1.0 - w) * self.discrete.prob_ge(t)

    def prob_gt(self, t):
        w = self.weight_ac
        return w * self.ac.prob_gt(t) + (1.0 - w) * self.discrete.prob_gt(t)

    def prob_abs_ge(self, t):
        w = self.weight_ac
        return w * self.ac.prob_abs_ge(t) + (1.0 - w) * self.discrete.prob_abs_ge(t)


def expectation_via_tail(law, tol=1e-10):
    """E(X) for a nonnegative law as the integral of P(X > t).

    Integrates the tail from 0 to the upper endpoint (infinite
    endpoints are mapped internally). Raises NonNegativityViolation if
    the support extends below 0 and DivergentTail if the quadrature
    cannot settle.
    """
    if law.lep < 0:
        raise NonNegativityViolation(
            f"law {law.name!r} has support below 0 (lep={law.lep})"
        )
    uep = law.uep

    def tail(t):
        t = np.asarray(t, dtype=float)
        return 1.0 - np.asarray(law.cdf(t), dtype=float)

    # the tail is smooth off the law's jump set, so integrate piecewise
    # between atoms: a step hidden inside one panel would otherwise
    # fool the Simpson error estimate
    breaks = [0.0]
    atoms = None
    if law.kind == "discrete":
        atoms = law.atoms
    elif law.kind == "mixture":
        atoms = law.discrete.atoms
    if atoms is not None:
        breaks.extend(float(a) for a in atoms if 0.0 < a < uep)
    breaks.append(uep)
    try:
        return float(
            sum(
                integrate(tail, lo, hi, tol=tol / max(1, len(breaks) - 1))
                for lo, hi in zip(breaks[:-1], breaks[1:])
            )
        )
    except Exception as exc:  # quadrature exploded: divergent or near-divergent tail
        raise DivergentTail(str(exc)) from exc


def discrete_tail_sum(law, n_max):
    """Bracket of E|X| from the partial sums of P(|X| >= n).

    Returns (lower, upper) = (-1 + S, S) with S = sum_{n=0..n_max}
    P(|X| >= n). Warns with TruncationWarning when the tail term at
    n_max is above 1e-12 (the bracket then reflects the truncation,
    not the full series).
    """
    terms = [law.prob_abs_ge(n) if n > 0 else 1.0 for n in range(n_max + 1)]
    cut = law.prob_abs_ge(n_max + 1)
    if cut > TAIL_TOL:
        warnings.warn(
            f"first truncated term P(|X| >= {n_max + 1}) = {cut:.3e}",
            TruncationWarning,
        )
    s = float(np.sum(terms))
    return s - 1.0, s


def lp_norm(samples, p):
    """Empirical Lp norm (mean |x|^p)^(1/p); p = inf gives max |x|."""
    x = np.abs(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValueError("empty sample array")
    if p == np.inf or p == "inf":
        return float(x.max())
    p = float(p)
    if p < 1.0:
        raise InvalidOrder(f"Lp norm needs p >= 1, got {p}")
    m = x.max()
    if m == 0.0:
        return 0.0
    # scale by the max so large p does not overflow
    return float(m * np.mean((x / m) ** p) ** (1.0 / p))


def cdf_decompose(law):
    """Split a law into ((weight_ac, ac_part), (weight_d, discrete_part)).

    Recombining the weighted cdfs reproduces the original cdf
    pointwise. Pure laws split with a zero weight on the missing side.
    """
    if law.kind == "mixture":
        return (law.weight_ac, law.ac), (1.0 - law.weight_ac, law.discrete)
    if law.kind == "abs_continuous":
        return (1.0, law), (0.0, None)
    if law.kind == "discrete":
        return (0.0, None), (1.0, law)
    raise TypeError(f"not a law: {law!r}")


def total_mass(law, tol=1e-10):
    """Integral/sum of the mass; should be 1 for every proper law."""
    if law.kind == "discrete":
        return float(law.probs.sum()) + law.truncated_mass
    if law.kind == "abs_continuous":
        return integrate(law.pdf, law.lep, law.uep, tol=tol)
    (w_ac, ac), (w_d, disc) = cdf_decompose(law)
    out = 0.0
    if w_ac:
        out += w_ac * total_mass(ac, tol=tol)
    if w_d:
        out += w_d * total_mass(disc, tol=tol)
    return out
