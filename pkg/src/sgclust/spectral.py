"""Laplacian variants, cut objectives and the spectral clustering pipelines.

Matrix conventions: the signed adjacency A splits as A = A+ - A- with both
parts entrywise nonnegative; D+ / D- are their diagonal degree matrices and
Dbar = D+ + D- is the signed degree matrix. The signed Laplacian is
Lbar = Dbar - A; the positive/negative Laplacians are L+ = D+ - A+ and
L- = D- - A-, and Q- = D- + A- is the signless Laplacian of the negative
part (so Lbar = L+ + Q-).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import MethodError
from .graphs import Labeling, SignedGraph
from .kmeans import DEFAULT_RESTARTS, kmeans_pp
from .linalg import (
    DEFAULT_TOL,
    DENSE_THRESHOLD,
    SparseSymOperator,
    generalized_smallest_k,
    smallest_k_eigenpairs,
)

LAPLACIAN_KINDS = (
    "unsigned",
    "unsigned_sym",
    "unsigned_rw",
    "signed",
    "signed_sym",
    "signed_rw",
    "signed_sym_separated",
)

CUT_KINDS = (
    "cut",
    "rcut",
    "ncut",
    "scut",
    "signed_rcut",
    "signed_ncut",
    "pos_ratio_assoc",
    "neg_ratio_assoc",
    "pos_ratio_cut",
    "neg_ratio_cut",
    "balance_ratio_cut",
    "balance_ratio_assoc",
    "balance_ncut",
    "balance_nassoc",
)


@dataclass(frozen=True)
class SpongeConfig:
    tau_plus: float = 1.0
    tau_minus: float = 1.0
    symmetric: bool = False

    def __post_init__(self):
        if self.tau_plus <= 0 or self.tau_minus <= 0:
            raise ValueError("tau parameters must be positive")


def _parts(graph):
    a_pos = graph.pos_adjacency
    a_neg = graph.neg_adjacency
    d_pos = np.asarray(a_pos.sum(axis=1)).ravel()
    d_neg = np.asarray(a_neg.sum(axis=1)).ravel()
    return a_pos, a_neg, d_pos, d_neg


def _require_no_isolated(dbar, kind):
    isolated = np.flatnonzero(dbar == 0)
    if len(isolated):
        raise MethodError(
            f"{kind} Laplacian undefined with isolated vertices: "
            f"{isolated.tolist()[:20]}"
        )


def _pseudo_inv_sqrt(d):
    out = np.zeros_like(d)
    nz = d > 0
    out[nz] = 1.0 / np.sqrt(d[nz])
    return sp.diags(out)


def build_laplacian(graph, kind):
    """Build the named Laplacian as an exactly-symmetric operator.

    The random-walk kinds are returned in their symmetric similar form
    Dbar^(-1/2) L Dbar^(-1/2) (same eigenvalues); ``rw_scale`` on the result
    holds the diagonal that maps its eigenvectors back to random-walk ones.
    The separated kind is L+_sym + Q-_sym with each part normalised by its
    own degrees (zero part-degrees contribute nothing).
    """
    if kind not in LAPLACIAN_KINDS:
        raise ValueError(f"unknown Laplacian kind {kind!r}")
    a_pos, a_neg, d_pos, d_neg = _parts(graph)
    dbar = d_pos + d_neg
    n = graph.n_vertices

    if kind in ("unsigned", "signed"):
        a = a_pos + a_neg if kind == "unsigned" else a_pos - a_neg
        lap = sp.diags(dbar) - a
        return SparseSymOperator(sp.triu(lap))

    if kind in ("unsigned_sym", "unsigned_rw", "signed_sym", "signed_rw"):
        _require_no_isolated(dbar, kind)
        a = a_pos + a_neg if kind.startswith("unsigned") else a_pos - a_neg
        inv_sqrt = _pseudo_inv_sqrt(dbar)
        lap = sp.eye(n) - inv_sqrt @ a @ inv_sqrt
        scale = inv_sqrt.diagonal() if kind.endswith("_rw") else None
        return SparseSymOperator(sp.triu(lap), rw_scale=scale)

    # signed_sym_separated
    _require_no_isolated(dbar, kind)
    ip = sp.diags((d_pos > 0).astype(float))
    im = sp.diags((d_neg > 0).astype(float))
    sp_inv = _pseudo_inv_sqrt(d_pos)
    sn_inv = _pseudo_inv_sqrt(d_neg)
    lap = (ip - sp_inv @ a_pos @ sp_inv) + (im + sn_inv @ a_neg @ sn_inv)
    return SparseSymOperator(sp.triu(lap))


# ---------------------------------------------------------------------------
# cut objectives
# ---------------------------------------------------------------------------

def _indicators(labeling, n):
    labels = labeling.labels
    if np.any(labeling.unassigned_mask):
        raise MethodError("cut objectives need a total labeling")
    k = labeling.n_clusters
    x = np.zeros((n, k))
    x[np.arange(n), labels] = 1.0
    sizes = x.sum(axis=0)
    if np.any(sizes == 0):
        raise MethodError("empty cluster in labeling")
    return x, sizes


def _quad(matrix, x):
    return np.einsum("nc,nc->c", x, matrix @ x)


def evaluate_cut(graph, labeling, kind):
    """Evaluate a cut/association objective for a labeling.

    The k-way ratio/normalised forms are the usual sums of per-cluster
    Rayleigh quotients with 0/1 indicator vectors; the plain ``cut`` counts
    each crossing edge once. The two-way signed cuts (scut family) require
    at most two clusters.
    """
    if kind not in CUT_KINDS:
        raise ValueError(f"unknown cut kind {kind!r}")
    n = graph.n_vertices
    x, sizes = _indicators(labeling, n)
    a_pos, a_neg, d_pos, d_neg = _parts(graph)
    dbar = d_pos + d_neg

    if kind in ("cut", "rcut", "ncut"):
        a_abs = a_pos + a_neg
        assoc = _quad(a_abs, x)
        vol = np.einsum("nc,n->c", x, dbar)
        crossing = vol - assoc  # per-cluster cut(X_c, complement)
        if kind == "cut":
            return float(crossing.sum() / 2.0)
        if kind == "rcut":
            return float((crossing / sizes).sum())
        if np.any(vol == 0):
            raise MethodError("zero-volume cluster in ncut")
        return float((crossing / vol).sum())

    if kind in ("scut", "signed_rcut", "signed_ncut"):
        k = x.shape[1]
        if k > 2:
            raise MethodError(f"{kind} is a two-way objective, got k={k}")
        lu = labeling.labels[graph.u]
        lv = labeling.labels[graph.v]
        crossing = lu != lv
        pos = graph.sign > 0
        w = graph.weight
        scut = 2.0 * float(w[pos & crossing].sum()) + float(w[~pos & ~crossing].sum())
        if kind == "scut":
            return scut
        if k < 2:
            raise MethodError(f"{kind} needs two nonempty clusters")
        if kind == "signed_rcut":
            return float(scut * (1.0 / sizes[0] + 1.0 / sizes[1]))
        vol = np.einsum("nc,n->c", x, dbar)
        if np.any(vol == 0):
            raise MethodError("zero-volume cluster in signed normalized cut")
        return float(scut * (1.0 / vol[0] + 1.0 / vol[1]))

    numerators = {
        "pos_ratio_assoc": lambda: _quad(a_pos, x),
        "neg_ratio_assoc": lambda: _quad(a_neg, x),
        "pos_ratio_cut": lambda: _quad(sp.diags(d_pos) - a_pos, x),
        "neg_ratio_cut": lambda: _quad(sp.diags(d_neg) - a_neg, x),
        "balance_ratio_cut": lambda: _quad(sp.diags(d_pos) - a_pos + a_neg, x),
        "balance_ratio_assoc": lambda: _quad(sp.diags(d_neg) + a_pos - a_neg, x),
        "balance_ncut": lambda: _quad(sp.diags(d_pos) - a_pos + a_neg, x),
        "balance_nassoc": lambda: _quad(sp.diags(d_neg) + a_pos - a_neg, x),
    }
    num = numerators[kind]()
    if kind in ("balance_ncut", "balance_nassoc"):
        denom = np.einsum("nc,n->c", x, dbar)
        if np.any(denom == 0):
            raise MethodError("zero-volume cluster in balance normalized objective")
    else:
        denom = sizes
    return float((num / denom).sum())


# ---------------------------------------------------------------------------
# clustering pipelines
# ---------------------------------------------------------------------------

def _row_normalize(x):
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return x / norms


def _embed_and_cluster(vectors, k, seed, restarts, normalize_rows):
    emb = _row_normalize(vectors) if normalize_rows else vectors
    return kmeans_pp(emb, k, restarts=restarts, seed=seed).labels


def spectral_cluster(graph, kind, k, seed=0, restarts=DEFAULT_RESTARTS,
                     tol=DEFAULT_TOL, max_iter=None,
                     dense_threshold=DENSE_THRESHOLD):
    """Spectral clustering: k smallest eigenvectors of the chosen Laplacian,
    then k-means++ on the vertex rows.

    Rows are length-normalised for the symmetric-normalised signed kind
    (standard practice there), raw otherwise.
    """
    if k < 2:
        raise MethodError("spectral clustering needs k >= 2")
    op = build_laplacian(graph, kind)
    pairs = smallest_k_eigenpairs(op, k, tol=tol, max_iter=max_iter,
                                  seed=seed, dense_threshold=dense_threshold)
    vectors = pairs.vectors
    if op.rw_scale is not None:
        vectors = vectors * op.rw_scale[:, None]
    return _embed_and_cluster(vectors, k, seed, restarts,
                              normalize_rows=kind == "signed_sym")


def bnc_cluster(graph, k, symmetric=False, seed=0, restarts=DEFAULT_RESTARTS,
                tol=DEFAULT_TOL, max_iter=None,
                dense_threshold=DENSE_THRESHOLD):
    """Balance-normalized-cut clustering via the direct spectral relaxation.

    Minimises sum_c x'(D+ - A)x / x'Dbar x; the continuous solution is the
    bottom of the pencil ((D+ - A), Dbar), or of the congruent standard
    problem Dbar^(-1/2) (D+ - A) Dbar^(-1/2) for the symmetric variant.
    """
    if k < 2:
        raise MethodError("bnc_cluster needs k >= 2")
    a_pos, a_neg, d_pos, d_neg = _parts(graph)
    dbar = d_pos + d_neg
    if np.any(dbar == 0):
        raise MethodError("balance normalized cut needs Dbar nonsingular")
    numerator = sp.diags(d_pos) - (a_pos - a_neg)
    if symmetric:
        inv_sqrt = _pseudo_inv_sqrt(dbar)
        op = SparseSymOperator(sp.triu(inv_sqrt @ numerator @ inv_sqrt))
        pairs = smallest_k_eigenpairs(op, k, tol=tol, max_iter=max_iter,
                                      seed=seed, dense_threshold=dense_threshold)
    else:
        pairs = generalized_smallest_k(
            SparseSymOperator(sp.triu(numerator)),
            SparseSymOperator(sp.diags(dbar).tocsr()),
            k, tol=tol, max_iter=max_iter, seed=seed,
            dense_threshold=dense_threshold,
        )
    return _embed_and_cluster(pairs.vectors, k, seed, restarts,
                              normalize_rows=False)


def sponge_pencil(graph, cfg):
    """The (numerator, denominator) operator pair for SPONGE clustering."""
    a_pos, a_neg, d_pos, d_neg = _parts(graph)
    n = graph.n_vertices
    if cfg.symmetric:
        _require_no_isolated(d_pos + d_neg, "SPONGE_sym")
        sp_inv = _pseudo_inv_sqrt(d_pos)
        sn_inv = _pseudo_inv_sqrt(d_neg)
        lp_sym = sp.diags((d_pos > 0).astype(float)) - sp_inv @ a_pos @ sp_inv
        ln_sym = sp.diags((d_neg > 0).astype(float)) - sn_inv @ a_neg @ sn_inv
        num = lp_sym + cfg.tau_minus * sp.eye(n)
        den = ln_sym + cfg.tau_plus * sp.eye(n)
    else:
        num = sp.diags(d_pos) - a_pos + cfg.tau_minus * sp.diags(d_neg)
        den = sp.diags(d_neg) - a_neg + cfg.tau_plus * sp.diags(d_pos)
    return SparseSymOperator(sp.triu(num)), SparseSymOperator(sp.triu(den))


def sponge_cluster(graph, k, cfg=None, seed=0, restarts=DEFAULT_RESTARTS,
                   tol=DEFAULT_TOL, max_iter=None,
                   dense_threshold=DENSE_THRESHOLD):
    """SPONGE clustering: bottom generalized eigenvectors of
    (L+ + tau- D-, L- + tau+ D+), symmetric variant with the separately
    normalised Laplacians and identity regularisers.
    """
    if k < 2:
        raise MethodError("sponge_cluster needs k >= 2")
    cfg = cfg or SpongeConfig()
    num, den = sponge_pencil(graph, cfg)
    try:
        pairs = generalized_smallest_k(num, den, k, tol=tol, max_iter=max_iter,
                                       seed=seed, dense_threshold=dense_threshold)
    except Exception as exc:
        from .errors import NotPositiveDefiniteError
        if isinstance(exc, NotPositiveDefiniteError):
            raise NotPositiveDefiniteError(
                str(exc) + "; try a larger tau_plus"
            ) from exc
        raise
    return _embed_and_cluster(pairs.vectors, k, seed, restarts,
                              normalize_rows=cfg.symmetric)
