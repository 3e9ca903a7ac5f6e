"""Signed-graph community detection toolkit."""

from .graphs import (
    GraphStats,
    Labeling,
    SignedGraph,
    augment_negative_edges,
    compute_stats,
    greatest_connected_component,
    load_edge_list,
    load_labels,
)
from .kmeans import KMeansResult, kmeans_pp, weighted_kernel_kmeans
from .linalg import (
    EigenPairs,
    SparseSymOperator,
    eigengap_suggest_k,
    generalized_smallest_k,
    smallest_k_eigenpairs,
)
from .metrics import adjusted_rand_index, edge_agreement, mutual_ari_matrix
from .spectral import (
    SpongeConfig,
    bnc_cluster,
    build_laplacian,
    evaluate_cut,
    spectral_cluster,
    sponge_cluster,
)
from .balance import (
    BalancedState,
    StatusInfluence,
    graphb_km_cluster,
    harary_bipartition,
    harary_cluster,
    matrix_completion_cluster,
    sample_balanced_states,
    status_influence,
    weak_balance_cluster,
)
from .concor import concor
from .walks import RwgConfig, fcsg_cluster, rwg_matrix

__version__ = "0.1.0"

__all__ = [
    "GraphStats", "Labeling", "SignedGraph", "augment_negative_edges",
    "compute_stats", "greatest_connected_component", "load_edge_list",
    "load_labels", "KMeansResult", "kmeans_pp", "weighted_kernel_kmeans",
    "EigenPairs", "SparseSymOperator", "eigengap_suggest_k",
    "generalized_smallest_k", "smallest_k_eigenpairs",
    "adjusted_rand_index", "edge_agreement", "mutual_ari_matrix",
    "SpongeConfig", "bnc_cluster", "build_laplacian", "evaluate_cut",
    "spectral_cluster", "sponge_cluster", "BalancedState", "StatusInfluence",
    "graphb_km_cluster", "harary_bipartition", "harary_cluster",
    "matrix_completion_cluster", "sample_balanced_states", "status_influence",
    "weak_balance_cluster", "concor", "RwgConfig", "fcsg_cluster",
    "rwg_matrix",
]
