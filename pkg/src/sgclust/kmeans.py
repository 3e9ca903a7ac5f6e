"""k-means++ and batch weighted kernel k-means.

Both are written for spectral embeddings: small k, dense float features,
determinism under an explicit seed. Restarts stabilise the stochastic
benchmark tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MethodError
from .graphs import Labeling
from .linalg import SparseSymOperator

DEFAULT_RESTARTS = 20
DEFAULT_LIMIT = 1e-6
DEFAULT_MAX_ITER = 300


@dataclass
class KMeansResult:
    labels: Labeling
    centroids: np.ndarray
    inertia: float
    iterations: int
    inertia_history: list


def _sq_dists(x, centroids):
    # ||x - c||^2 for every (point, centroid) pair
    cross = x @ centroids.T
    return np.maximum(
        (x * x).sum(axis=1)[:, None] - 2 * cross + (centroids * centroids).sum(axis=1)[None, :],
        0.0,
    )


def _seed_centroids(x, k, rng):
    n = len(x)
    idx = [rng.integers(n)]
    d2 = _sq_dists(x, x[idx[-1]][None, :])[:, 0]
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            # all remaining points coincide with a centroid; any point works
            idx.append(rng.integers(n))
        else:
            idx.append(int(rng.choice(n, p=d2 / total)))
        d2 = np.minimum(d2, _sq_dists(x, x[idx[-1]][None, :])[:, 0])
    return x[idx].copy()


def _lloyd(x, k, limit, max_iter, rng):
    centroids = _seed_centroids(x, k, rng)
    history = []
    labels = None
    for it in range(max_iter):
        d2 = _sq_dists(x, centroids)
        labels = d2.argmin(axis=1)
        history.append(float(d2[np.arange(len(x)), labels].sum()))
        new_centroids = centroids.copy()
        for c in range(k):
            members = labels == c
            if members.any():
                new_centroids[c] = x[members].mean(axis=0)
            else:
                # Empty cluster: re-seed at the point farthest from its centroid.
                far = int(np.argmax(d2[np.arange(len(x)), labels]))
                new_centroids[c] = x[far]
                labels[far] = c
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < limit:
            break
    d2 = _sq_dists(x, centroids)
    labels = d2.argmin(axis=1)
    inertia = float(d2[np.arange(len(x)), labels].sum())
    history.append(inertia)
    return labels, centroids, inertia, len(history) - 1, history


def kmeans_pp(x, k, limit=DEFAULT_LIMIT, max_iter=DEFAULT_MAX_ITER,
              restarts=DEFAULT_RESTARTS, seed=0):
    """Best-inertia k-means++ over independent restarts.

    Each run seeds centroids with D^2-weighted sampling and iterates Lloyd
    updates until the largest centroid displacement drops below ``limit``.
    Identical (x, k, seed) always produce identical labels.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    n = len(x)
    if k > n:
        raise MethodError(f"k={k} exceeds number of points {n}")
    if limit <= 0:
        raise MethodError("limit must be positive")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, restarts)):
        run = _lloyd(x, k, limit, max_iter, rng)
        if best is None or run[2] < best[2]:
            best = run
    labels, centroids, inertia, iterations, history = best
    return KMeansResult(
        labels=Labeling.relabeled_dense(labels),
        centroids=centroids,
        inertia=inertia,
        iterations=iterations,
        inertia_history=history,
    )


def weighted_kernel_kmeans(kernel, weights, k, init=None, t_max=100, seed=0):
    """Batch weighted kernel k-means on a (shifted) positive-definite kernel.

    The point-to-centroid distance uses the usual three-term kernel
    expansion. Indefinite kernels are made positive definite by a diagonal
    shift before iterating. Stops at the first pass with no reassignment.
    """
    if isinstance(kernel, SparseSymOperator):
        kernel = kernel.dense()
    kmat = np.array(kernel, dtype=np.float64)
    n = kmat.shape[0]
    if kmat.shape != (n, n) or not np.allclose(kmat, kmat.T, atol=1e-10):
        raise MethodError("kernel must be a symmetric square matrix")
    w = np.asarray(weights, dtype=np.float64)
    if len(w) != n or np.any(w <= 0):
        raise MethodError("weights must be positive, one per point")
    if not 1 <= k <= n:
        raise MethodError(f"k={k} out of range")

    lam = float(np.linalg.eigvalsh(kmat)[0])
    if lam < 0:
        kmat = kmat + np.eye(n) * (1e-9 - lam)

    if init is not None:
        labels = np.asarray(init.labels if isinstance(init, Labeling) else init,
                            dtype=np.int64).copy()
        if len(labels) != n:
            raise MethodError("init labeling length mismatch")
        if k > 1 and len(np.unique(labels)) < 2:
            raise MethodError("degenerate init: all points in one cluster")
    else:
        rng = np.random.default_rng(seed)
        labels = rng.integers(k, size=n)
        labels[rng.permutation(n)[:k]] = np.arange(k)

    diag = np.diag(kmat)
    for _ in range(t_max):
        dist = np.empty((n, k))
        for c in range(k):
            members = labels == c
            wc = w[members]
            sc = wc.sum()
            if sc <= 0:
                dist[:, c] = np.inf
                continue
            kw = kmat[:, members] @ wc
            quad = float(wc @ kmat[np.ix_(members, members)] @ wc)
            dist[:, c] = diag - 2.0 * kw / sc + quad / (sc * sc)
        new_labels = dist.argmin(axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    return Labeling.relabeled_dense(labels)
