"""Conditional expectation with respect to finite partitions.

A sigma-sub-algebra is represented by the finite partition that
generates it: a label per sample index. E(X | B) is then the table of
cell means, which is simultaneously the Radon-Nikodym object, the
regression function and the L2 projection onto cell-constant tables;
all three characterizations are verified in the tests with finite
arithmetic only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyCell, NotARefinement
from .inequalities import BoundReport, spot_check_convex


@dataclass(frozen=True)
class FinitePartition:
    """Cell labels per sample index; cells must all be nonempty."""

    labels: np.ndarray
    cells: tuple

    def __init__(self, labels, cells=None):
        labels = np.asarray(labels)
        object.__setattr__(self, "labels", labels)
        present = set(labels.tolist())
        if cells is None:
            cells = tuple(sorted(present, key=str))
        else:
            cells = tuple(cells)
            missing = [c for c in cells if c not in present]
            if missing:
                raise EmptyCell(f"declared cells with no samples: {missing}")
        object.__setattr__(self, "cells", cells)

    @property
    def size(self):
        return self.labels.size

    def masks(self):
        return {cell: self.labels == cell for cell in self.cells}

    def frequencies(self):
        n = self.labels.size
        return {cell: float(mask.sum()) / n for cell, mask in self.masks().items()}

    def refines(self, coarse):
        """True if every cell of self sits inside one cell of coarse."""
        if self.labels.size != coarse.labels.size:
            return False
        for mask in self.masks().values():
            if len(set(coarse.labels[mask].tolist())) != 1:
                return False
        return True


@dataclass(frozen=True)
class CondExpectation:
    """The B-measurable version of E(X | B): one value per cell."""

    table: dict
    partition: FinitePartition

    def values(self):
        """Per-sample vector (constant on each cell)."""
        out = np.empty(self.partition.size, dtype=float)
        for cell, mask in self.partition.masks().items():
            out[mask] = self.table[cell]
        return out


def cond_expect(x, partition):
    """Cell means of x; the defining integral identity holds per cell."""
    x = np.asarray(x, dtype=float)
    if x.size != partition.size:
        raise ValueError("x and partition must have the same length")
    table = {}
    for cell, mask in partition.masks().items():
        count = int(mask.sum())
        if count == 0:
            raise EmptyCell(f"cell {cell!r} is empty")
        table[cell] = float(x[mask].mean())
    return CondExpectation(table, partition)


def tower_check(x, coarse, fine, tol=1e-12):
    """Both tower identities for a refinement pair of partitions.

    E(E(X|fine)|coarse) must equal E(X|coarse) and conditioning the
    coarse version on the finer algebra must leave it unchanged.
    """
    if not fine.refines(coarse):
        raise NotARefinement("fine does not refine coarse")
    x = np.asarray(x, dtype=float)
    direct = cond_expect(x, coarse)
    two_step = cond_expect(cond_expect(x, fine).values(), coarse)
    gap_down = max(
        abs(direct.table[c] - two_step.table[c]) for c in coarse.cells
    )
    redundant = cond_expect(direct.values(), fine)
    gap_up = max(
        abs(redundant.values()[i] - direct.values()[i]) for i in range(x.size)
    )
    return {
        "coarse_of_fine_gap": gap_down,
        "fine_of_coarse_gap": gap_up,
        "passed": gap_down <= tol and gap_up <= tol,
    }


def conditional_jensen(x, partition, phi, check_range=(-10.0, 10.0)):
    """phi(E(X|B)) <= E(phi(X)|B) cell-wise, exact on the empirical measure."""
    spot_check_convex(phi, *check_range)
    x = np.asarray(x, dtype=float)
    ce_x = cond_expect(x, partition)
    ce_phi = cond_expect(np.asarray(phi(x), dtype=float), partition)
    reports = []
    for cell in partition.cells:
        reports.append(
            BoundReport(
                float(phi(np.asarray(ce_x.table[cell]))),
                ce_phi.table[cell],
                f"cond-jensen[{cell!r}]",
            )
        )
    return reports


def l2_projection_check(x, partition, n_perturbations=100, seed=0, scale=1.0):
    """The cell-mean table minimizes empirical mean-square distance.

    Compares the squared distance of x to its conditional expectation
    against randomly perturbed cell-constant candidates; the cell mean
    minimizes within-cell SSE, so no candidate can do better.
    """
    x = np.asarray(x, dtype=float)
    ce = cond_expect(x, partition)
    base = float(np.mean((x - ce.values()) ** 2))
    rng = np.random.default_rng(seed)
    best_rival = np.inf
    for _ in range(n_perturbations):
        rival = dict(ce.table)
        for cell in partition.cells:
            rival[cell] += rng.normal(0.0, scale)
        rival_vals = CondExpectation(rival, partition).values()
        best_rival = min(best_rival, float(np.mean((x - rival_vals) ** 2)))
    return {
        "projection_sse": base,
        "best_rival_sse": best_rival,
        "passed": base <= best_rival + 1e-12,
    }


def regression_total_expectation(x, y_labels, tol=1e-12):
    """sum_j E(X | Y = y_j) P(Y = y_j) recovers E(X) exactly."""
    part = FinitePartition(y_labels)
    x = np.asarray(x, dtype=float)
    ce = cond_expect(x, part)
    freqs = part.frequencies()
    total = sum(ce.table[c] * freqs[c] for c in part.cells)
    overall = float(x.mean())
    return {
        "reconstructed": total,
        "overall": overall,
        "gap": abs(total - overall),
        "passed": abs(total - overall) <= tol,
    }


def binned_conditional_density_study(x, y, bin_counts=(4, 8, 16, 32), seed=None):
    """Continuous conditioning by binning, with bin-width refinement.

    E(X | Y) for continuous Y is approximated by partitioning Y into
    equal-frequency bins and conditioning on the finite partition;
    halving the bin width should stabilize the regression estimate.
    This is a construction study, not the measure-theoretic object.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    curves = {}
    for n_bins in bin_counts:
        edges = np.quantile(y, np.linspace(0.0, 1.0, n_bins + 1))
        labels = np.clip(np.searchsorted(edges, y, side="right") - 1, 0, n_bins - 1)
        part = FinitePartition(labels)
        ce = cond_expect(x, part)
        curves[n_bins] = ce.values()
    keys = sorted(curves)
    drifts = [
        float(np.mean(np.abs(curves[a] - curves[b])))
        for a, b in zip(keys[:-1], keys[1:])
    ]
    return {"bin_counts": keys, "successive_drift": drifts}
