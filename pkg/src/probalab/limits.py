"""Criteria and Monte Carlo experiments for the classical limit theorems.

Almost-sure convergence cannot be observed directly at desk scale, so
it is operationalized as path-Cauchy flatness across dyadic
checkpoints; every experiment is deterministic given its seed.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import (
    make_law,
    numeric_abs_central_moment,
    truncated_second_moment,
)
from .errors import DomainError
from .normal import inverse_loi_normal, phi_oracle
from .quadrature import integrate
from .sampling import rng_from_seed

BERRY_ESSEEN_C = 36.0  # the constant established by the text's proof


@dataclass(frozen=True)
class TriangularSpec:
    """Row of laws k -> X_k (1-based); iid is the common special case."""

    entry_fn: object
    iid_entry: object = None

    @classmethod
    def iid(cls, entry):
        return cls(entry_fn=lambda k: entry, iid_entry=entry)

    @classmethod
    def from_fn(cls, fn):
        return cls(entry_fn=fn, iid_entry=None)

    def entry(self, k):
        return self.entry_fn(k) if self.iid_entry is None else self.iid_entry

    def variances(self, n):
        return np.array(
            [self.entry(k).moments.require_variance() for k in range(1, n + 1)]
        )

    def sample_matrix(self, trials, n, rng):
        """(trials, n) increments; column k drawn from the law of X_k."""
        if self.iid_entry is not None:
            flat = self.iid_entry.sampler(trials * n, rng)
            return flat.reshape(trials, n)
        cols = [self.entry(k).sampler(trials, rng) for k in range(1, n + 1)]
        return np.column_stack(cols)


@dataclass(frozen=True)
class LimitReport:
    """One experiment outcome; deterministic for a fixed seed."""

    name: str
    statistics: dict
    predicted: object
    passed: bool
    seed: object
    criteria: dict = field(default_factory=dict)


def wlln_experiment(entry, n, trials, seed, eps_values=(0.1, 0.05), checkpoints=None):
    """Fraction of trials with |S_m/m - mu| > eps, decreasing in m.

    Laws without a mean (Cauchy) are refused before anything runs.
    """
    mu = entry.moments.require_mean(f"for {entry.name}")
    if checkpoints is None:
        checkpoints = sorted({max(1, n // 100), max(1, n // 10), n})
    rng = rng_from_seed(seed)
    fractions = {eps: [] for eps in eps_values}
    sums = np.zeros(trials)
    done = 0
    for cp in checkpoints:
        block = entry.sampler(trials * (cp - done), rng).reshape(trials, cp - done)
        sums += block.sum(axis=1)
        done = cp
        means = sums / cp
        for eps in eps_values:
            fractions[eps].append(float((np.abs(means - mu) > eps).mean()))
    monotone = all(
        all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))
        for vals in fractions.values()
    )
    return LimitReport(
        name=f"wlln[{entry.name}]",
        statistics={"checkpoints": list(checkpoints), "fractions": fractions},
        predicted=mu,
        passed=monotone,
        seed=seed,
    )


def slln_kolmogorov_criterion(spec, b_fn, n, seed, flat_tol=0.05):
    """Kolmogorov's SLLN criterion plus one observed path.

    Reports the partial series sum_k Var(X_k)/b_k^2 (converged when
    its second half adds a negligible amount) and the trajectory
    (S_k - E S_k)/b_k; when the criterion converged, the max of the
    trajectory over k in [n/2, n] must be small.
    """
    ks = np.arange(1, n + 1)
    b = np.asarray([float(b_fn(k)) for k in ks])
    if (b <= 0).any() or (np.diff(b) < 0).any():
        raise DomainError("b must be positive and nondecreasing")
    variances = spec.variances(n)
    terms = variances / (b * b)
    partial = float(terms.sum())
    tail_half = float(terms[n // 2 :].sum())
    converged = tail_half < 1e-3 * (1.0 + partial)
    rng = rng_from_seed(seed)
    if spec.iid_entry is not None:
        means = np.full(n, spec.iid_entry.moments.require_mean())
    else:
        means = np.array([spec.entry(int(k)).moments.require_mean() for k in ks])
    x = spec.sample_matrix(1, n, rng)[0]
    traj = (np.cumsum(x) - np.cumsum(means)) / b
    tail_max = float(np.abs(traj[n // 2 :]).max())
    return LimitReport(
        name="slln-kolmogorov",
        statistics={
            "criterion_partial_sum": partial,
            "criterion_tail_half": tail_half,
            "trajectory_tail_max": tail_max,
            "trajectory_end": float(traj[-1]),
        },
        predicted=0.0,
        passed=(not converged) or tail_max < flat_tol,
        seed=seed,
        criteria={"series_converged": converged},
    )


def three_series_check(spec, c, n_terms=10_000, seed=0, path_n=1_000, path_tol=1e-3):
    """Kolmogorov's three-series verdict with a path-flatness probe.

    Computes partial sums of (i) P(|X_k| >= c), (ii) Var(X_k^{(c)}),
    (iii) E(X_k^{(c)}) and classifies each as converged when its
    second-half contribution is negligible. Verdict CONVERGES needs
    all three; a series whose terms do not vanish forces DIVERGES.
    """
    if c <= 0:
        raise DomainError("truncation level c must be positive")
    probs = np.empty(n_terms)
    t_means = np.empty(n_terms)
    t_vars = np.empty(n_terms)
    if spec.iid_entry is not None:
        law = spec.iid_entry.law
        probs[:] = law.prob_abs_ge(c)
        m, v = law.truncated_mean_var(c)
        t_means[:] = m
        t_vars[:] = v
    else:
        for k in range(1, n_terms + 1):
            law = spec.entry(k).law
            probs[k - 1] = law.prob_abs_ge(c)
            m, v = law.truncated_mean_var(c)
            t_means[k - 1] = m
            t_vars[k - 1] = v
    series = {
        "tail_probability": probs,
        "truncated_variance": t_vars,
        "truncated_mean_abs": np.abs(t_means),
    }
    verdicts = {}
    for label, terms in series.items():
        total = float(terms.sum())
        tail = float(terms[n_terms // 2 :].sum())
        if tail < 1e-8 * (1.0 + total):
            verdicts[label] = "converges"
        elif terms[-1] > 1e-6:
            verdicts[label] = "diverges"
        else:
            verdicts[label] = "inconclusive"
    if all(v == "converges" for v in verdicts.values()):
        verdict = "CONVERGES"
    elif any(v == "diverges" for v in verdicts.values()):
        verdict = "DIVERGES"
    else:
        verdict = "INCONCLUSIVE"
    rng = rng_from_seed(seed)
    x = spec.sample_matrix(1, 2 * path_n, rng)[0]
    s = np.cumsum(x)
    flatness = abs(float(s[2 * path_n - 1] - s[path_n - 1]))
    passed = (verdict != "CONVERGES") or flatness < path_tol
    return LimitReport(
        name="three-series",
        statistics={
            "partial_sums": {k: float(v.sum()) for k, v in series.items()},
            "path_flatness": flatness,
        },
        predicted=verdict,
        passed=passed,
        seed=seed,
        criteria=verdicts,
    )


def lindeberg_g(spec, n, eps):
    """g_n(eps) = (1/s_n^2) sum_k E[X_k^2 1_{|X_k| >= eps s_n}]."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    sn2 = float(spec.variances(n).sum())
    cut = eps * math.sqrt(sn2)
    if spec.iid_entry is not None:
        return n * truncated_second_moment(spec.iid_entry, cut) / sn2
    total = sum(
        truncated_second_moment(spec.entry(k), cut) for k in range(1, n + 1)
    )
    return total / sn2


def lyapounov_ratio(spec, n, delta):
    """sum_k E|X_k|^{2+delta} / s_n^{2+delta} (centered summands)."""
    if delta <= 0:
        raise DomainError("delta must be positive")
    sn = math.sqrt(float(spec.variances(n).sum()))
    r = 2.0 + delta

    def abs_moment(entry):
        law = entry.law
        if law.kind == "discrete":
            return float((np.abs(law.atoms) ** r) @ law.probs)
        from .catalog import _moment_window

        lo, hi = _moment_window(entry)
        return integrate(lambda x: np.abs(x) ** r * law.pdf(x), lo, hi, tol=1e-9)

    if spec.iid_entry is not None:
        total = n * abs_moment(spec.iid_entry)
    else:
        total = sum(abs_moment(spec.entry(k)) for k in range(1, n + 1))
    return total / sn**r


def feller_negligibility(spec, n):
    """max_k sigma_k^2 / s_n^2, the uniform-negligibility statistic."""
    v = spec.variances(n)
    return float(v.max() / v.sum())


def centered(entry):
    """The law of X - EX, for feeding mean-zero experiments.

    Discrete laws get shifted atoms; continuous laws get a translated
    density/cdf/sampler. The CLI uses this so `limit berry-esseen
    --law bernoulli` means the centered Bernoulli sum.
    """
    from .catalog import CatalogEntry
    from .laws import ContinuousLaw, DiscreteLaw, Moments

    mu = entry.moments.require_mean(f"for {entry.name}")
    if mu == 0.0:
        return entry
    var = entry.moments.require_variance(f"for {entry.name}")
    name = f"centered_{entry.name}"
    base_sampler = entry.sampler
    if entry.law.kind == "discrete":
        law = DiscreteLaw(name, entry.law.atoms - mu, entry.law.probs,
                          truncated_mass=entry.law.truncated_mass)
    else:
        base_pdf = entry.law.pdf
        base_cdf = entry.law.cdf
        law = ContinuousLaw(
            name,
            lambda x: base_pdf(np.asarray(x, dtype=float) + mu),
            lambda x: base_cdf(np.asarray(x, dtype=float) + mu),
            entry.law.lep - mu,
            entry.law.uep - mu,
        )
    return CatalogEntry(
        name=name,
        law=law,
        params=dict(entry.params),
        moments=Moments(0.0, var),
        sampler=(lambda n, rng: base_sampler(n, rng) - mu) if base_sampler else None,
        moments_verified=False,
    )


@functools.lru_cache(maxsize=8)
def _normal_grid(points=2001):
    """Equi-probability normal grid and its reference Phi values."""
    probs = (np.arange(1, points + 1)) / (points + 1.0)
    xs = np.array([inverse_loi_normal(p) for p in probs])
    phis = np.array([phi_oracle(x) for x in xs])
    return xs, phis


def _iid_sum_sampler(entry, n):
    """Closed-form law of an n-fold iid sum, when the catalog knows one.

    Two-atom laws sum to a shifted/scaled binomial (the cf product
    identity); Gaussians stay Gaussian. Returns None otherwise.
    """
    law = entry.law
    if law.kind == "discrete" and law.atoms.size == 2 and law.truncated_mass == 0.0:
        x0, x1 = law.atoms
        p = float(law.probs[1])
        binom = make_law("binomial", n=n, p=p)

        def sampler(trials, rng):
            return x0 * n + (x1 - x0) * binom.sampler(trials, rng)

        return sampler
    if entry.name == "gaussian":
        scaled = make_law(
            "gaussian",
            m=n * entry.params["m"],
            sigma=math.sqrt(n) * entry.params["sigma"],
        )
        return scaled.sampler
    return None


def berry_esseen_gap(spec, n, trials, seed, grid_points=2001):
    """Empirical sup |F_{S_n/s_n} - Phi| against the 36 beta^3/s^3 bound.

    The empirical cdf is read on an equi-probability normal grid; the
    third-moment side (beta_n^3) uses closed atom sums or quadrature.
    MC slack for the comparison is DKW-style 1.5/sqrt(trials).
    """
    entries = [spec.entry(k) for k in range(1, n + 1)] if spec.iid_entry is None else None
    if spec.iid_entry is not None:
        entry = spec.iid_entry
        mu = entry.moments.require_mean()
        if abs(mu) > 1e-12:
            raise DomainError("berry_esseen_gap expects centered summands")
        sn2 = n * entry.moments.require_variance()
        beta3 = n * numeric_abs_central_moment(entry, 3)
    else:
        mus = [e.moments.require_mean() for e in entries]
        if any(abs(m) > 1e-12 for m in mus):
            raise DomainError("berry_esseen_gap expects centered summands")
        sn2 = sum(e.moments.require_variance() for e in entries)
        beta3 = sum(numeric_abs_central_moment(e, 3) for e in entries)
    sn = math.sqrt(sn2)
    bound = BERRY_ESSEEN_C * beta3 / sn**3
    rng = rng_from_seed(seed)
    fast = _iid_sum_sampler(spec.iid_entry, n) if spec.iid_entry is not None else None
    if fast is not None:
        sums = fast(trials, rng)
    else:
        sums = np.zeros(trials)
        chunk = max(1, 4_000_000 // n)
        for start in range(0, trials, chunk):
            m = min(chunk, trials - start)
            sums[start : start + m] = spec.sample_matrix(m, n, rng).sum(axis=1)
    norm = np.sort(sums / sn)
    xs, phis = _normal_grid(grid_points)
    ecdf = np.searchsorted(norm, xs, side="right") / trials
    gap = float(np.abs(ecdf - phis).max())
    slack = 1.5 / math.sqrt(trials)
    return LimitReport(
        name="berry-esseen",
        statistics={"empirical_sup_gap": gap, "bound": bound, "mc_slack": slack},
        predicted=bound,
        passed=gap <= bound + slack,
        seed=seed,
    )


def lil_trajectory(n_max, seed, entry=None, n_min=1_000, block=1_000_000):
    """Running max of S_n / (sigma sqrt(2 n loglog n)) over [n_min, n_max].

    The normalization equals the theorem's sqrt(2 s_n^2 loglog s_n^2)
    up to loglog(sigma^2); in particular it is exactly invariant under
    scaling the summands. Desk scale cannot see the true limsup of 1,
    so consumers assert a wide bracket instead.
    """
    if n_max < 16:
        raise DomainError("need n_max >= e^e for the iterated logarithm")
    if entry is None:
        entry = make_law("rademacher")
    mu = entry.moments.require_mean()
    sigma = entry.moments.std
    if abs(mu) > 1e-12:
        raise DomainError("lil_trajectory expects centered summands")
    rng = rng_from_seed(seed)
    running = 0.0
    total = 0.0
    checkpoints = []
    done = 0
    while done < n_max:
        m = min(block, n_max - done)
        s = np.cumsum(entry.sampler(m, rng)) + total
        idx = np.arange(done + 1, done + m + 1)
        live = idx >= max(n_min, 16)
        if live.any():
            denom = sigma * np.sqrt(2.0 * idx[live] * np.log(np.log(idx[live])))
            running = max(running, float((s[live] / denom).max()))
        total = float(s[-1])
        done += m
        checkpoints.append((done, running))
    return LimitReport(
        name="lil",
        statistics={"running_max": running, "checkpoints": checkpoints},
        predicted=1.0,
        passed=True,
        seed=seed,
    )


def cesaro(x):
    """Arithmetic means of a sequence (the Cesaro generalized limit)."""
    x = np.asarray(x, dtype=float)
    return np.cumsum(x) / np.arange(1, x.size + 1)


def kronecker_weighted(x, b):
    """(sum_{k<=n} b_k x_k) / b_n; -> 0 when sum x_k converges."""
    x = np.asarray(x, dtype=float)
    b = np.asarray(b, dtype=float)
    if (b <= 0).any() or (np.diff(b) < 0).any():
        raise DomainError("b must be positive and nondecreasing")
    return np.cumsum(b * x) / b


def toeplitz_mean(x, weight_fn, probe_rows=None, bound_c=None):
    """y_n = sum_k a_{n,k} x_k for a Toeplitz weight array.

    weight_fn(n) returns the weight row (a_{n,1}, ..., a_{n,k(n)}).
    The lemma hypothesis sup_n sum_k |a_{n,k}| <= c is probed on a few
    rows; a violation raises DomainError.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if probe_rows is None:
        probe_rows = sorted({1, max(1, n // 2), n})
    sums = [float(np.abs(np.asarray(weight_fn(r), dtype=float)).sum()) for r in probe_rows]
    limit = bound_c if bound_c is not None else 1.0 + 1e-9
    if any(s > limit + 1e-9 for s in sums):
        raise DomainError(f"Toeplitz row mass exceeds c={limit}: {max(sums)}")
    out = np.empty(n)
    for row in range(1, n + 1):
        w = np.asarray(weight_fn(row), dtype=float)
        out[row - 1] = float(w @ x[: w.size])
    return out
