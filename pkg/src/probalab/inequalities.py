"""Bound computations and verifiers for the classical inequality suite.

Exact inequalities (Markov/Chebyshev on laws, the finite-sum Hoelder
family, Jensen, Bonferroni) are checked at zero tolerance: they are
theorems on the empirical measure. Inequalities whose left side is
only MC-estimable (maximal and exponential bounds) carry the standard
error of the estimate and are allowed 3 SE of slack, because the
theorem constrains the distribution, not one sample path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConjugateMismatch,
    ConvexityViolation,
    DomainError,
    NegativeSupport,
    TooManyEvents,
    UnboundedForLowerBound,
    ZeroDenominator,
)
from .laws import lp_norm
from .quadrature import integrate
from .sampling import rng_from_seed

_EXACT_SLACK = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """One verified inequality instance: lhs <= rhs up to slack."""

    lhs: float
    rhs: float
    context: str = ""
    se: float = 0.0  # combined MC standard error; 0 for exact sides

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def satisfied(self):
        return self.slack >= -(_EXACT_SLACK + 3.0 * self.se)


def _entry_moments(entry):
    m = entry.moments.require_mean(f"for {entry.name}")
    v = entry.moments.require_variance(f"for {entry.name}")
    return m, v


def markov(entry_or_samples, x):
    """P(X >= x) <= E X / x for a nonnegative variable and x > 0."""
    if x <= 0:
        raise DomainError("markov needs a threshold x > 0")
    if hasattr(entry_or_samples, "law"):
        entry = entry_or_samples
        if entry.law.lep < 0:
            raise NegativeSupport(f"{entry.name} extends below 0")
        mean = entry.moments.require_mean(f"for {entry.name}")
        lhs = entry.law.prob_ge(x)
        return BoundReport(lhs, mean / x, f"markov[{entry.name}] x={x}")
    samples = np.asarray(entry_or_samples, dtype=float)
    if (samples < 0).any():
        raise NegativeSupport("samples extend below 0")
    lhs = float((samples >= x).mean())
    return BoundReport(lhs, float(samples.mean()) / x, f"markov[samples] x={x}")


def chebyshev(entry_or_samples, x):
    """P(|X - EX| > x) <= Var X / x^2."""
    if x <= 0:
        raise DomainError("chebyshev needs a threshold x > 0")
    if hasattr(entry_or_samples, "law"):
        entry = entry_or_samples
        mean, var = _entry_moments(entry)
        lhs = entry.law.prob_gt(mean + x) + float(entry.law.cdf(mean - x)) - (
            entry.law.pmf(mean - x) if entry.law.kind == "discrete" else 0.0
        )
        return BoundReport(float(lhs), var / (x * x), f"chebyshev[{entry.name}] x={x}")
    samples = np.asarray(entry_or_samples, dtype=float)
    mean = float(samples.mean())
    var = float(samples.var())
    lhs = float((np.abs(samples - mean) > x).mean())
    return BoundReport(lhs, var / (x * x), f"chebyshev[samples] x={x}")


def _expect_g(entry, g):
    law = entry.law
    if law.kind == "discrete":
        return float(np.asarray(g(law.atoms), dtype=float) @ law.probs)
    lo, hi = law.lep, law.uep
    if not np.isfinite(lo) or not np.isfinite(hi):
        from .catalog import _moment_window

        lo, hi = _moment_window(entry)
    return integrate(lambda t: np.asarray(g(t), dtype=float) * law.pdf(t), lo, hi,
                     tol=1e-10)


def basic_inequality(entry, g, a, g_sup=None):
    """Loeve's basic inequality for nondecreasing nonnegative g.

    Returns (lower, upper) BoundReports around P(X >= a):
      (E g(X) - g(a)) / sup g <= P(X >= a) <= E g(X) / g(a).
    g_sup defaults to g evaluated at the law's upper endpoint; an
    unbounded g on an unbounded law makes the lower bound vacuous (0).
    """
    law = entry.law
    eg = _expect_g(entry, g)
    ga = float(g(np.asarray(a, dtype=float)))
    if ga < 0:
        raise DomainError("g must be nonnegative")
    p = law.prob_ge(a)
    if ga == 0.0:
        raise ZeroDenominator("g(a) = 0: upper bound undefined")
    upper = BoundReport(p, eg / ga, f"basic-upper[{entry.name}] a={a}")
    if g_sup is None:
        g_sup = float(g(np.asarray(law.uep, dtype=float))) if np.isfinite(law.uep) else np.inf
    lower_val = (eg - ga) / g_sup if np.isfinite(g_sup) and g_sup > 0 else 0.0
    lower = BoundReport(lower_val, p, f"basic-lower[{entry.name}] a={a}")
    return lower, upper


def holder_family(x, y, p, q):
    """Hoelder, Cauchy-Schwarz, Minkowski and C_p on paired samples.

    These are exact finite-sum theorems on the empirical measure, so
    the reports carry no MC tolerance at all.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DomainError("paired arrays must share a shape")
    if p <= 1.0 and q != np.inf:
        if p == 1.0:
            raise ConjugateMismatch("Hoelder pairing needs p > 1")
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise ConjugateMismatch(f"1/{p} + 1/{q} != 1")
    reports = [
        BoundReport(
            abs(float(np.mean(x * y))), lp_norm(x, p) * lp_norm(y, q), f"holder p={p}"
        ),
        BoundReport(
            abs(float(np.mean(x * y))),
            lp_norm(x, 2) * lp_norm(y, 2),
            "cauchy-schwarz",
        ),
        BoundReport(lp_norm(x + y, p), lp_norm(x, p) + lp_norm(y, p), f"minkowski p={p}"),
        BoundReport(
            lp_norm(x + y, p) ** p,
            2.0 ** (p - 1.0) * (lp_norm(x, p) ** p + lp_norm(y, p) ** p),
            f"cp p={p}",
        ),
    ]
    return reports


def spot_check_convex(phi, lo=-10.0, hi=10.0, trials=100, seed=1234):
    """Midpoint convexity probe; raises ConvexityViolation on failure."""
    rng = rng_from_seed(seed)
    a = rng.uniform(lo, hi, trials)
    b = rng.uniform(lo, hi, trials)
    mid = 0.5 * (a + b)
    bad = phi(mid) > 0.5 * (phi(a) + phi(b)) + 1e-12
    if bad.any():
        raise ConvexityViolation("phi failed a midpoint convexity check")


def jensen(entry_or_samples, phi, check_range=(-10.0, 10.0)):
    """phi(E X) <= E phi(X) for convex phi (spot-checked)."""
    spot_check_convex(phi, *check_range)
    if hasattr(entry_or_samples, "law"):
        entry = entry_or_samples
        mean = entry.moments.require_mean(f"for {entry.name}")
        e_phi = _expect_g(entry, phi)
        return BoundReport(float(phi(np.asarray(mean))), e_phi, f"jensen[{entry.name}]")
    samples = np.asarray(entry_or_samples, dtype=float)
    return BoundReport(
        float(phi(np.asarray(samples.mean()))),
        float(np.mean(phi(samples))),
        "jensen[samples]",
    )


def inclusion_exclusion(events):
    """Poincare formula and the Bonferroni sandwich on an event matrix.

    events is an (N, n) boolean matrix (sample x event). Returns
    (exact, partials) with exact = P(union) on the empirical measure
    and partials[s] the alternating partial sum through intersection
    order s+1; odd-indexed partials bound from below, even-indexed
    from above, both exactly.
    """
    ev = np.asarray(events, dtype=bool)
    if ev.ndim != 2:
        raise DomainError("events must be an (N, n) boolean matrix")
    n = ev.shape[1]
    if n > 20:
        raise TooManyEvents("inclusion-exclusion limited to n <= 20 events")
    counts = ev.sum(axis=1)  # per-sample number of events hit
    exact = float((counts >= 1).mean())
    # sum over r-subsets of P(intersection) = E C(count, r)
    order_sums = np.array(
        [np.mean(_comb_array(counts, r)) for r in range(1, n + 1)]
    )
    signs = np.array([(-1.0) ** (r + 1) for r in range(1, n + 1)])
    partials = np.cumsum(signs * order_sums)
    return exact, partials


def _comb_array(counts, r):
    out = np.ones(counts.shape, dtype=float)
    c = counts.astype(float)
    for j in range(r):
        out *= np.maximum(c - j, 0.0) / (j + 1)
    return out


def _partial_sums(increments):
    inc = np.asarray(increments, dtype=float)
    if inc.ndim != 2:
        raise DomainError("increments must be an (N, n) sample matrix")
    return np.cumsum(inc, axis=1)


def _mc_prob(indicator):
    p = float(indicator.mean())
    se = math.sqrt(max(p * (1.0 - p), 1e-12) / indicator.size)
    return p, se


def kolmogorov_maximal(increments, eps, c=None, col_vars=None):
    """Both sides of Kolmogorov's maximal inequality (KM01).

    increments: (N, n) matrix of iid path increments (columns
    independent, centered). Upper: P(max_k |S_k| >= eps) <= s_n^2/eps^2.
    Lower (needs |X_k| <= c a.s.): >= 1 - (eps + c)^2 / s_n^2.
    Returns (lower_report, upper_report); lower is None without c.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    s = _partial_sums(increments)
    if col_vars is None:
        col_vars = np.asarray(increments, dtype=float).var(axis=0)
    sn2 = float(np.sum(col_vars))
    p, se = _mc_prob(np.abs(s).max(axis=1) >= eps)
    upper = BoundReport(p, sn2 / eps**2, f"kolmogorov-max-upper eps={eps}", se=se)
    if c is None:
        return None, upper
    if not np.isfinite(c) or np.abs(increments).max() > c + 1e-12:
        raise UnboundedForLowerBound("summands exceed the declared bound c")
    lower = BoundReport(
        1.0 - (eps + c) ** 2 / sn2, p, f"kolmogorov-max-lower eps={eps} c={c}", se=se
    )
    return lower, upper


def exponential_bound(increments, eps, bound_c, col_vars=None):
    """Kolmogorov's exponential upper bound for P(S_n > eps s_n).

    bound_c is the a.s. bound on |X_k|; c = bound_c / s_n. The bound is
    exp(-eps^2/2 (1 - eps c / 2)) when eps c <= 1, exp(-eps/(4c))
    otherwise (the regime split of the theorem).
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    inc = np.asarray(increments, dtype=float)
    if col_vars is None:
        col_vars = inc.var(axis=0)
    sn = math.sqrt(float(np.sum(col_vars)))
    c = bound_c / sn
    if eps * c <= 1.0:
        bound = math.exp(-0.5 * eps * eps * (1.0 - 0.5 * eps * c))
    else:
        bound = math.exp(-eps / (4.0 * c))
    p, se = _mc_prob(inc.sum(axis=1) > eps * sn)
    return BoundReport(p, bound, f"expo-bound eps={eps} c={c:.4f}", se=se)


def mgf_sandwich(entry, t, bound_c):
    """(EB2)/(EB3): exp(t^2 s^2/2 (1-tc)) < E e^{tX} < exp(t^2 s^2/2 (1+tc/2)).

    Needs a centered law bounded by bound_c and t bound_c <= 1. The
    expectation side is exact (atom sums or quadrature).
    """
    if t <= 0 or t * bound_c > 1.0:
        raise DomainError("need t > 0 and t * c <= 1")
    mean = entry.moments.require_mean(f"for {entry.name}")
    if abs(mean) > 1e-12:
        raise DomainError("mgf sandwich needs a centered law")
    var = entry.moments.require_variance(f"for {entry.name}")
    e_tx = _expect_g(entry, lambda x: np.exp(t * np.asarray(x, dtype=float)))
    half = 0.5 * t * t * var
    lower = math.exp(half * (1.0 - t * bound_c))
    upper = math.exp(half * (1.0 + 0.5 * t * bound_c))
    return (
        BoundReport(lower, e_tx, f"mgf-sandwich-lower t={t}"),
        BoundReport(e_tx, upper, f"mgf-sandwich-upper t={t}"),
    )


def billingsley_maximal(increments, eps):
    """P(max_k S_k >= eps) <= 2 P(S_n >= eps - sqrt(2 Var S_n))."""
    s = _partial_sums(increments)
    var_sn = float(s[:, -1].var())
    lhs, se1 = _mc_prob(s.max(axis=1) >= eps)
    rhs_p, se2 = _mc_prob(s[:, -1] >= eps - math.sqrt(2.0 * var_sn))
    return BoundReport(
        lhs, 2.0 * rhs_p, f"billingsley eps={eps}", se=math.hypot(se1, 2.0 * se2)
    )


def etemadi_maximal(increments, alpha):
    """P(max_k |S_k| >= 3 alpha) <= 3 max_k P(|S_k| >= alpha)."""
    if alpha < 0:
        raise DomainError("alpha must be nonnegative")
    s = _partial_sums(increments)
    lhs, se1 = _mc_prob(np.abs(s).max(axis=1) >= 3.0 * alpha)
    per_k = (np.abs(s) >= alpha).mean(axis=0)
    k_star = int(np.argmax(per_k))
    rhs_p, se2 = _mc_prob(np.abs(s[:, k_star]) >= alpha)
    return BoundReport(
        lhs, 3.0 * rhs_p, f"etemadi alpha={alpha}", se=math.hypot(se1, 3.0 * se2)
    )


def elementary_exp_inequality(t):
    """e^{t(1-t)} <= 1 + t <= e^t for t >= 0; returns both reports."""
    if t < 0:
        raise DomainError("t must be nonnegative")
    return (
        BoundReport(math.exp(t * (1.0 - t)), 1.0 + t, f"exp-lower t={t}"),
        BoundReport(1.0 + t, math.exp(t), f"exp-upper t={t}"),
    )


def submartingale_maximal(increments, eps):
    """Maximal inequality in its nonnegative-random-walk special case.

    For partial sums of iid nonnegative-drift steps, (S_k) is a
    sub-martingale and P(max_k S_k >= eps) <= E S_n / eps. General
    filtrations are out of scope; this is the documented restriction.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    s = _partial_sums(increments)
    lhs, se = _mc_prob(s.max(axis=1) >= eps)
    return BoundReport(lhs, float(s[:, -1].mean()) / eps, f"submart eps={eps}", se=se)
