"""Gaussian vectors on R^d: eigendecomposition, mgf, pdf, sampling.

The eigensolver is a cyclic Jacobi sweep, which mirrors the
orthogonal-transform construction used for the sampling identity
Y = m + T^t diag(sqrt(delta)) Z. Dimensions stay small (d <= 64),
so Jacobi's robustness beats anything fancier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    NonZeroCrossCovariance,
    NotPositiveSemidefinite,
    ShapeMismatch,
    SingularCovariance,
)
from .sampling import box_muller, rng_from_seed

_EIG_CLAMP = 1e-12  # eigenvalues in [-clamp, 0] count as 0 (semidefinite)


@dataclass(frozen=True)
class SymMatrix:
    """A real symmetric matrix; symmetry is enforced at construction."""

    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeMismatch("SymMatrix needs a square 2-d array")
        if not (a == a.T).all():
            raise ShapeMismatch("matrix is not exactly symmetric")
        object.__setattr__(self, "a", a)

    @property
    def dim(self):
        return self.a.shape[0]


def eigendecompose(matrix, max_sweep_factor=100):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (T, delta) with T orthogonal, T A T^t = diag(delta), and
    the rows of T are the eigenvectors. Eigenvalues are sorted by
    descending absolute value, ties broken by original index, so the
    output is deterministic. Fails with ConvergenceFailure after
    100 d^2 sweeps (never observed for d <= 64).
    """
    if isinstance(matrix, SymMatrix):
        a = matrix.a.copy()
    else:
        a = np.array(matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeMismatch("need a square matrix")
        if not np.allclose(a, a.T, rtol=0.0, atol=0.0):
            raise ShapeMismatch("matrix is not exactly symmetric")
    d = a.shape[0]
    v = np.eye(d)
    norm = np.sqrt((a * a).sum())
    if d == 1 or norm == 0.0:
        delta = np.diag(a).copy()
        return v, delta
    threshold = 1e-14 * norm
    max_sweeps = max_sweep_factor * d * d
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * (np.triu(a, 1) ** 2).sum())
        if off < threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                # rotation angle zeroing a[p, q]
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot_p = a[p, :].copy()
                rot_q = a[q, :].copy()
                a[p, :] = c * rot_p - s * rot_q
                a[q, :] = s * rot_p + c * rot_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                vp = v[p, :].copy()
                vq = v[q, :].copy()
                v[p, :] = c * vp - s * vq
                v[q, :] = s * vp + c * vq
    else:
        raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    delta = np.diag(a).copy()
    order = sorted(range(d), key=lambda i: (-abs(delta[i]), i))
    return v[order, :], delta[order]


class GaussianVector:
    """N_d(m, Sigma) with an eagerly cached eigendecomposition.

    Semidefinite covariances are allowed for sampling (eigenvalues in
    [-1e-12, 0] are clamped to 0); pdf and the quadratic form refuse
    when any eigenvalue was clamped.
    """

    def __init__(self, mean, cov):
        self.mean = np.array(mean, dtype=float).ravel()
        cov = cov.a if isinstance(cov, SymMatrix) else np.array(cov, dtype=float)
        if cov.shape != (self.mean.size, self.mean.size):
            raise ShapeMismatch(
                f"covariance {cov.shape} does not match mean of length {self.mean.size}"
            )
        if not (cov == cov.T).all():
            raise ShapeMismatch("covariance is not exactly symmetric")
        self.cov = cov
        self.dim = self.mean.size
        t, delta = eigendecompose(cov)
        scale = max(1.0, float(np.abs(delta).max()) if delta.size else 1.0)
        if (delta < -_EIG_CLAMP * scale).any():
            raise NotPositiveSemidefinite(
                f"covariance has eigenvalue {delta.min():.3e} < 0"
            )
        self._clamped = bool((delta <= 0.0).any())
        self.transform = t  # rows are eigenvectors: T Sigma T^t = diag(delta)
        self.eigenvalues = np.maximum(delta, 0.0)

    def mgf(self, u):
        """exp(<m, u> + u^t Sigma u / 2)."""
        u = np.asarray(u, dtype=float)
        if u.shape[-1] != self.dim:
            raise ShapeMismatch("argument dimension mismatch")
        quad = np.einsum("...i,ij,...j->...", u, self.cov, u)
        return np.exp(u @ self.mean + 0.5 * quad)

    def _require_invertible(self):
        if self._clamped or (self.eigenvalues < _EIG_CLAMP).any():
            raise SingularCovariance(
                "operation needs an invertible covariance (eigenvalue ~ 0 present)"
            )

    def pdf(self, x):
        """Density det(Sigma)^(-1/2) (2 pi)^(-d/2) exp(-(x-m)' Sigma^-1 (x-m)/2)."""
        self._require_invertible()
        x = np.asarray(x, dtype=float)
        z = (x - self.mean) @ self.transform.T  # coordinates in the eigenbasis
        quad = np.sum(z * z / self.eigenvalues, axis=-1)
        log_det = float(np.sum(np.log(self.eigenvalues)))
        log_norm = -0.5 * (log_det + self.dim * np.log(2.0 * np.pi))
        return np.exp(log_norm - 0.5 * quad)

    def sample(self, n, seed):
        """n rows of m + T^t diag(sqrt(delta)) Z with iid standard Z."""
        rng = rng_from_seed(seed)
        z = box_muller(rng, n * self.dim).reshape(n, self.dim)
        scaled = z * np.sqrt(self.eigenvalues)
        return self.mean + scaled @ self.transform

    def affine(self, a, b=None):
        """Law of A X + B: N(Am + B, A Sigma A^t)."""
        a = np.atleast_2d(np.asarray(a, dtype=float))
        if a.shape[1] != self.dim:
            raise ShapeMismatch(f"A has {a.shape[1]} columns, need {self.dim}")
        b = np.zeros(a.shape[0]) if b is None else np.asarray(b, dtype=float).ravel()
        if b.size != a.shape[0]:
            raise ShapeMismatch("B length does not match the rows of A")
        new_cov = a @ self.cov @ a.T
        new_cov = 0.5 * (new_cov + new_cov.T)  # keep exact symmetry
        return GaussianVector(a @ self.mean + b, new_cov)

    def quadratic_form(self, x):
        """(x - m)' Sigma^-1 (x - m) per sample row; chi^2_d in law."""
        self._require_invertible()
        x = np.atleast_2d(np.asarray(x, dtype=float))
        z = (x - self.mean) @ self.transform.T
        return np.squeeze((z * z / self.eigenvalues).sum(axis=1))

    def marginal(self, indices):
        idx = np.asarray(indices, dtype=int)
        return GaussianVector(self.mean[idx], self.cov[np.ix_(idx, idx)])


def uncorrelated_independence_check(gv, split, probe_grid=None, tol=1e-12):
    """Verify mgf factorization across a zero cross-covariance block.

    split is the index where the first block ends. The cross block
    must be exactly 0, else NonZeroCrossCovariance; then the joint mgf
    must factor into the block mgfs on every probe point.
    """
    split = int(split)
    if not 0 < split < gv.dim:
        raise ShapeMismatch("split must cut the vector into two nonempty blocks")
    cross = gv.cov[:split, split:]
    if (cross != 0.0).any():
        raise NonZeroCrossCovariance(
            f"cross-covariance block has max |entry| {np.abs(cross).max():.3e}"
        )
    first = gv.marginal(range(split))
    second = gv.marginal(range(split, gv.dim))
    if probe_grid is None:
        base = np.linspace(-1.0, 1.0, 3)
        probe_grid = [
            np.concatenate([np.full(split, s), np.full(gv.dim - split, t)])
            for s in base
            for t in base
        ]
    worst = 0.0
    for u in probe_grid:
        u = np.asarray(u, dtype=float)
        joint = gv.mgf(u)
        product = first.mgf(u[:split]) * second.mgf(u[split:])
        worst = max(worst, abs(joint - product) / max(1.0, abs(joint)))
    return {"max_relative_gap": worst, "passed": worst <= tol}
