"""Method registry: the benchmark-table names mapped onto callables.

Every entry takes (graph, k, seed, **options) and returns a Labeling;
options outside a method's vocabulary are ignored so one flag set can drive
the whole registry.
"""

from __future__ import annotations

from .balance import graphb_km_cluster, harary_cluster, matrix_completion_cluster, weak_balance_cluster
from .concor import concor
from .errors import MethodError
from .spectral import SpongeConfig, bnc_cluster, sponge_cluster, spectral_cluster
from .walks import RwgConfig, fcsg_cluster


def _spectral(kind):
    def run(graph, k, seed=0, restarts=20, tol=1e-8, max_iter=None, **_):
        return spectral_cluster(graph, kind, k, seed=seed, restarts=restarts,
                                tol=tol, max_iter=max_iter)
    return run


def _bnc(symmetric):
    def run(graph, k, seed=0, restarts=20, tol=1e-8, max_iter=None, **_):
        return bnc_cluster(graph, k, symmetric=symmetric, seed=seed,
                           restarts=restarts, tol=tol, max_iter=max_iter)
    return run


def _sponge(symmetric):
    def run(graph, k, seed=0, restarts=20, tol=1e-8, max_iter=None,
            tau_pos=1.0, tau_neg=1.0, **_):
        cfg = SpongeConfig(tau_plus=tau_pos, tau_minus=tau_neg,
                           symmetric=symmetric)
        return sponge_cluster(graph, k, cfg, seed=seed, restarts=restarts,
                              tol=tol, max_iter=max_iter)
    return run


def _fcsg(graph, k, seed=0, walk_len=5, **_):
    return fcsg_cluster(graph, RwgConfig(walk_len=walk_len))


def _graphb(graph, k, seed=0, restarts=20, trees=1000, **_):
    return graphb_km_cluster(graph, k, trees=trees, seed=seed,
                             restarts=restarts)


def _harary(graph, k, seed=0, restarts=20, **_):
    return harary_cluster(graph, max(1, k // 2), seed=seed, restarts=restarts)


def _weak_balance(graph, k, seed=0, **_):
    labeling, witness = weak_balance_cluster(graph)
    if labeling is None:
        raise MethodError(f"graph is not weakly balanced: offending edge {witness}")
    return labeling


def _completion(graph, k, seed=0, restarts=20, **_):
    return matrix_completion_cluster(graph, k, seed=seed, restarts=restarts)


def _concor(graph, k, seed=0, concor_depth=None, **_):
    depth = concor_depth
    if depth is None:
        depth = max(1, int(k - 1).bit_length())  # smallest d with 2^d >= k
    return concor(graph.adjacency.toarray(), depth=depth)


METHODS = {
    "lap_none": _spectral("signed"),
    "lap_sym": _spectral("signed_sym"),
    "lap_sep": _spectral("signed_sym_separated"),
    "BNC_none": _bnc(False),
    "BNC_sym": _bnc(True),
    "SPONGE_none": _sponge(False),
    "SPONGE_sym": _sponge(True),
    "FCSG": _fcsg,
    "graphB_km": _graphb,
    "harary": _harary,
    "weak_balance": _weak_balance,
    "completion": _completion,
    "concor": _concor,
}


def get_method(name):
    if name not in METHODS:
        known = ", ".join(sorted(METHODS))
        raise KeyError(f"unknown method {name!r}; registered methods: {known}")
    return METHODS[name]
