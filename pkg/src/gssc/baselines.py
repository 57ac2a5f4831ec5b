"""Comparison methods that treat edges independently or near-independently.

Kernel ridge regression fits each edge's time series on its own with an RBF
kernel; the product smoother then couples the per-edge grid estimates
through the degree-1 Laplacian in space and a second-difference operator in
time.  Neither method sees the spectral structure the reconstruction model
uses, which is the point of comparing against them.
"""

from __future__ import annotations

import csv

import numpy as np
import scipy.linalg

from .errors import FormatError, NumericalError
from .hodge import laplacian
from .learn import evaluation_grid


class KrrConfig:
    """RBF kernel ridge hyperparameters."""

    def __init__(self, lengthscale=1.0, ridge=1e-2):
        if not lengthscale > 0:
            raise ValueError("lengthscale must be positive")
        if ridge < 0:
            raise ValueError("ridge must be >= 0")
        self.lengthscale = float(lengthscale)
        self.ridge = float(ridge)

    def __repr__(self):
        return f"KrrConfig(lengthscale={self.lengthscale}, ridge={self.ridge})"


def rbf_kernel(a, b, lengthscale):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    diff = a[:, None] - b[None, :]
    return np.exp(-(diff ** 2) / (2.0 * lengthscale ** 2))


def krr_fit_eval(t, y, config, eval_points):
    """Kernel ridge predictor for one edge, evaluated at given instants."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.size == 0:
        raise ValueError("need at least one sample")
    K = rbf_kernel(t, t, config.lengthscale)
    try:
        alpha = np.linalg.solve(K + config.ridge * np.eye(len(t)), y)
    except np.linalg.LinAlgError:
        raise NumericalError(
            "kernel system is singular (duplicated sample instants with "
            "ridge = 0?); use a ridge > 0")
    return rbf_kernel(eval_points, t, config.lengthscale) @ alpha


class GridEstimate:
    """Per-edge signal values tabulated on a fixed time grid."""

    def __init__(self, values, grid):
        values = np.asarray(values, dtype=float)
        grid = np.asarray(grid, dtype=float)
        if values.ndim != 2 or values.shape[1] != len(grid):
            raise ValueError(f"values {values.shape} do not match grid of "
                             f"length {len(grid)}")
        self.values = values
        self.grid = grid

    @property
    def n_edges(self):
        return self.values.shape[0]


def krr_grid(samples, config, grid=None):
    """Independent KRR per edge, tabulated on the evaluation grid."""
    if grid is None:
        grid = evaluation_grid()
    rows = [krr_fit_eval(samples.t[e], samples.y[e], config, grid)
            for e in range(samples.n_edges)]
    return GridEstimate(np.vstack(rows), grid)


def _time_second_difference(n):
    # free boundary: D^T D for the (n-1) x n first-difference matrix
    d = np.zeros((n - 1, n))
    idx = np.arange(n - 1)
    d[idx, idx] = -1.0
    d[idx, idx + 1] = 1.0
    return d.T @ d


def sc_product(grid0, rep, alpha=0.05, beta=0.05):
    """Joint space-time smoothing of a grid estimate.

    Returns the minimizer of |Z - grid0|_F^2 + alpha tr(Z^T L_1 Z)
    + beta tr(Z L_t Z^T), a Sylvester equation (I + alpha L_1) Z
    + Z (beta L_t) = grid0.  With alpha = beta = 0 this is the identity.
    """
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be >= 0")
    if grid0.n_edges != rep.n_cells(1):
        raise ValueError(f"{grid0.n_edges} grid rows for {rep.n_cells(1)} edges")
    L1 = laplacian(rep, 1)
    Lt = _time_second_difference(len(grid0.grid))
    A = np.eye(grid0.n_edges) + alpha * L1
    Z = scipy.linalg.solve_sylvester(A, beta * Lt, grid0.values)
    return GridEstimate(Z, grid0.grid)


def save_grid(estimate, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# grid: " + " ".join(repr(float(v)) for v in estimate.grid) + "\n")
        writer = csv.writer(fh)
        writer.writerow(["edge"] + [f"t_{i}" for i in range(len(estimate.grid))])
        for e in range(estimate.n_edges):
            writer.writerow([e] + [repr(float(v)) for v in estimate.values[e]])


def load_grid(path):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        first = fh.readline()
        if not first.startswith("# grid:"):
            raise FormatError(f"{path}: missing '# grid:' metadata line")
        grid = np.array([float(v) for v in first[len("# grid:"):].split()])
        reader = csv.reader(fh)
        header = next(reader, None)
        expected = ["edge"] + [f"t_{i}" for i in range(len(grid))]
        if header != expected:
            raise FormatError(f"{path}: unexpected header {header}")
        rows = {}
        for lineno, row in enumerate(reader, start=3):
            if not row:
                continue
            try:
                rows[int(row[0])] = [float(v) for v in row[1:]]
            except (ValueError, IndexError):
                raise FormatError("bad grid row", lineno)
    n = len(rows)
    if sorted(rows) != list(range(n)):
        raise FormatError(f"{path}: edge indices are not 0..{n - 1}")
    values = np.array([rows[e] for e in range(n)])
    return GridEstimate(values, grid)
