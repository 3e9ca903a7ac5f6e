"""Convergence-of-iterated-correlations (CONCOR) blockmodel bipartitioning.

Column correlations of the input matrix are correlated again and again
until the matrix stabilises at +/-1 entries, which exposes a clean
bipartition; recursing on each block yields a shallow hierarchy.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError
from .graphs import Labeling


def _column_correlations(m):
    """Pearson correlations between columns; zero-variance columns correlate
    0 with everything (and 1 with themselves)."""
    m = np.asarray(m, dtype=float)
    centered = m - m.mean(axis=0, keepdims=True)
    std = centered.std(axis=0)
    safe = np.where(std == 0, 1.0, std)
    z = centered / safe
    corr = (z.T @ z) / len(m)
    degenerate = std == 0
    corr[degenerate, :] = 0.0
    corr[:, degenerate] = 0.0
    np.fill_diagonal(corr, 1.0)
    return corr


def _converge(m, eps, max_iter):
    corr = _column_correlations(m)
    for _ in range(max_iter):
        nxt = _column_correlations(corr)
        delta = float(np.abs(nxt - corr).max())
        corr = nxt
        if delta < eps:
            return corr
    raise ConvergenceError(
        f"CONCOR did not converge within {max_iter} iterations "
        f"(last delta {delta:.3e})"
    )


def _split(m, cols, eps, max_iter):
    corr = _converge(m[:, cols], eps, max_iter)
    first = corr[0, :] >= 0
    return cols[first], cols[~first]


def concor(matrix, depth=1, eps=1e-8, max_iter=200):
    """Hierarchical CONCOR labeling of the columns of ``matrix``.

    Splits recursively ``depth`` times (up to 2^depth leaf blocks); columns
    indistinguishable from vertex 0's block (e.g. constant columns) stay with
    it. For a graph, pass the signed adjacency matrix.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[1] < 2:
        raise ValueError("need a matrix with at least two columns")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    blocks = [np.arange(m.shape[1])]
    for _ in range(depth):
        nxt = []
        for cols in blocks:
            if len(cols) < 2:
                nxt.append(cols)
                continue
            left, right = _split(m, cols, eps, max_iter)
            if len(left) == 0 or len(right) == 0:
                nxt.append(cols)
            else:
                nxt.extend([left, right])
        blocks = nxt
    labels = np.empty(m.shape[1], dtype=np.int64)
    for i, cols in enumerate(sorted(blocks, key=lambda c: int(c.min()))):
        labels[cols] = i
    return Labeling.relabeled_dense(labels)
