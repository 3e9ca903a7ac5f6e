"""Symmetric sparse operators and the eigensolvers behind every spectral method.

The iterative path is LOBPCG (block preconditioned conjugate-gradient
iteration, Jacobi preconditioned) with a seeded random starting block; small
problems fall back to a dense solver. Non-convergence raises instead of
returning polluted eigenvectors, since that failure mode is exactly what the
large-sparse benchmarks probe.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import EigenSolverError, NotPositiveDefiniteError

DENSE_THRESHOLD = 512
DEFAULT_TOL = 1e-8


class SparseSymOperator:
    """Exactly-symmetric sparse matrix.

    Only the upper triangle (incl. diagonal) is stored; the symmetric CSR
    matrix is materialised as U + U.T - diag(U), which is symmetric to the
    last bit by construction.
    """

    def __init__(self, upper, rw_scale=None):
        upper = sp.triu(upper, format="csr")
        if not np.all(np.isfinite(upper.data)):
            raise ValueError("operator entries must be finite")
        self.dim = upper.shape[0]
        self._upper = upper
        d = upper.diagonal()
        self.matrix = (upper + upper.T - sp.diags(d)).tocsr()
        # Set for *_rw Laplacians: eigenvectors of the random-walk form are
        # rw_scale * (eigenvectors of this symmetric similar form).
        self.rw_scale = rw_scale

    @classmethod
    def from_coo(cls, dim, rows, cols, vals, rw_scale=None):
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        vals = np.asarray(vals, dtype=np.float64)
        i = np.minimum(rows, cols)
        j = np.maximum(rows, cols)
        m = sp.csr_matrix((vals, (i, j)), shape=(dim, dim))
        return cls(m, rw_scale=rw_scale)

    @classmethod
    def from_dense(cls, a, rw_scale=None):
        a = np.asarray(a, dtype=np.float64)
        if a.shape[0] != a.shape[1] or not np.allclose(a, a.T, atol=1e-12):
            raise ValueError("expected a symmetric square matrix")
        return cls(sp.csr_matrix(np.triu((a + a.T) / 2.0)), rw_scale=rw_scale)

    def dense(self):
        return self.matrix.toarray()

    def diagonal(self):
        return self.matrix.diagonal()

    def matvec(self, x):
        return self.matrix @ x

    def fro_norm(self):
        return float(spla.norm(self.matrix, "fro"))

    def is_diagonal(self):
        return self.matrix.nnz == np.count_nonzero(self.matrix.diagonal())

    def dump_coordinate(self, path):
        """Upper-triangle coordinate text dump: ``row col value`` lines."""
        coo = self._upper.tocoo()
        with open(path, "w") as fh:
            fh.write(f"# symmetric {self.dim} x {self.dim}, upper triangle\n")
            for i, j, x in zip(coo.row, coo.col, coo.data):
                fh.write(f"{i} {j} {x!r}\n")


@dataclass(frozen=True)
class EigenPairs:
    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        object.__setattr__(self, "vectors", np.asarray(self.vectors, dtype=float))
        if np.any(np.diff(self.values) < -1e-12):
            raise ValueError("eigenvalues must be ascending")


def _as_matrix(op):
    return op.matrix if isinstance(op, SparseSymOperator) else sp.csr_matrix(op)


def _jacobi_preconditioner(matrix):
    d = matrix.diagonal()
    if np.all(d > 0) and d.max() / d.min() < 1e12:
        inv = 1.0 / d
        return spla.LinearOperator(matrix.shape, matvec=lambda x: inv * x
                                   if x.ndim == 1 else inv[:, None] * x)
    return None


def _residuals(a, b, values, vectors):
    av = a @ vectors
    bv = vectors if b is None else b @ vectors
    r = av - bv * values[None, :]
    return np.linalg.norm(r, axis=0)


def _lobpcg_smallest(a, b, k, tol, max_iter, seed, precond=None):
    """LOBPCG with a guard block, post-verified residuals, seeded restarts."""
    n = a.shape[0]
    scale = max(1.0, float(spla.norm(a, "fro")))
    guard = min(max(2 * k, k + 8), max(n - 1, 1))
    rng = np.random.default_rng(seed)
    best = None
    attempts = 3
    for attempt in range(attempts):
        x0 = rng.standard_normal((n, guard))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                vals, vecs = spla.lobpcg(
                    a, x0, B=b, M=precond, tol=tol * scale,
                    maxiter=max_iter, largest=False,
                )
            except Exception as exc:  # scipy raises on hopeless input
                if attempt == attempts - 1:
                    raise EigenSolverError(f"LOBPCG failed: {exc}") from exc
                continue
        order = np.argsort(vals)[:k]
        vals, vecs = vals[order], vecs[:, order]
        res = _residuals(a, b, vals, vecs)
        worst = float(res.max())
        if best is None or worst < best[0]:
            best = (worst, vals, vecs)
        if worst <= tol * scale:
            return vals, vecs
    raise EigenSolverError(
        f"eigensolver did not reach tolerance {tol:g} within {max_iter} iterations",
        best_residual=best[0] / scale if best else None,
    )


def smallest_k_eigenpairs(op, k, tol=DEFAULT_TOL, max_iter=None, seed=0,
                          dense_threshold=DENSE_THRESHOLD):
    """k smallest eigenpairs of a symmetric operator, ascending.

    Dense solve when dim <= dense_threshold, otherwise seeded LOBPCG with
    Jacobi preconditioning. Raises EigenSolverError carrying the best
    residual when the iteration does not converge.
    """
    a = _as_matrix(op)
    n = a.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if max_iter is None:
        max_iter = 10 * n
    if n <= dense_threshold or n < 5 * max(k, 2):
        vals, vecs = np.linalg.eigh(a.toarray())
        return EigenPairs(vals[:k], vecs[:, :k])
    vals, vecs = _lobpcg_smallest(a, None, k, tol, max_iter, seed,
                                  precond=_jacobi_preconditioner(a))
    return EigenPairs(vals, vecs)


def _check_positive_definite(b, dense_threshold):
    n = b.shape[0]
    if n <= dense_threshold:
        try:
            scipy.linalg.cholesky(b.toarray())
        except scipy.linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError(
                "right-hand operator is not positive definite"
            ) from exc
        return
    d = b.diagonal()
    if np.any(d <= 0):
        raise NotPositiveDefiniteError(
            "right-hand operator has a nonpositive diagonal entry"
        )
    probe, _ = _lobpcg_smallest(b, None, 1, 1e-6, 10 * n, seed=0,
                                precond=_jacobi_preconditioner(b))
    if probe[0] <= 0:
        raise NotPositiveDefiniteError(
            f"right-hand operator has smallest eigenvalue {probe[0]:.3e} <= 0"
        )


def generalized_smallest_k(a, b, k, tol=DEFAULT_TOL, max_iter=None, seed=0,
                           dense_threshold=DENSE_THRESHOLD):
    """k smallest eigenpairs of the pencil (a, b); vectors are b-orthonormal.

    b must be positive definite (validated). A diagonal b is reduced by the
    congruence b^(-1/2) a b^(-1/2); anything else runs block iteration with
    b-inner products.
    """
    am = _as_matrix(a)
    bm = _as_matrix(b)
    n = am.shape[0]
    if bm.shape != am.shape:
        raise ValueError("operator shapes differ")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if max_iter is None:
        max_iter = 10 * n

    if isinstance(b, SparseSymOperator) and b.is_diagonal():
        d = bm.diagonal()
        if np.any(d <= 0):
            raise NotPositiveDefiniteError(
                "diagonal right-hand operator must be positive"
            )
        inv_sqrt = sp.diags(1.0 / np.sqrt(d))
        reduced = SparseSymOperator(sp.triu(inv_sqrt @ am @ inv_sqrt))
        pairs = smallest_k_eigenpairs(reduced, k, tol=tol, max_iter=max_iter,
                                      seed=seed, dense_threshold=dense_threshold)
        vectors = inv_sqrt @ pairs.vectors
        # b-orthonormal by construction: (D^-1/2 u)' D (D^-1/2 u) = u'u
        return EigenPairs(pairs.values, vectors)

    _check_positive_definite(bm, dense_threshold)
    if n <= dense_threshold:
        vals, vecs = scipy.linalg.eigh(am.toarray(), bm.toarray())
        return EigenPairs(vals[:k], vecs[:, :k])
    vals, vecs = _lobpcg_smallest(am, bm, k, tol, max_iter, seed,
                                  precond=_jacobi_preconditioner(am))
    return EigenPairs(vals, vecs)


def eigengap_suggest_k(values, k_max):
    """Index of the largest early eigenvalue jump (advisory k heuristic).

    Returns argmax over i < k_max of values[i+1] - values[i], plus one;
    first maximum wins ties.
    """
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        raise ValueError("need at least two eigenvalues")
    gaps = np.diff(values)
    upto = min(int(k_max), len(gaps))
    return int(np.argmax(gaps[:upto])) + 1
