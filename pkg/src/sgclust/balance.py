"""Balance-theory methods: Harary cuts, weak balance, sign completion and
the frustration-cloud status/influence features.

A signed graph is balanced when every cycle has positive sign product,
equivalently when a two-faction assignment exists with no frustrated edge.
The frustration cloud relaxes the (NP-hard) frustration index by sampling
spanning trees: each tree induces the nearest balanced state reachable by
switching, and per-vertex statistics over those states become clustering
features.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import MethodError, NotBalancedError, NotConnectedError
from .graphs import Labeling, SignedGraph, connected_components
from .kmeans import DEFAULT_RESTARTS, kmeans_pp
from .spectral import spectral_cluster


@dataclass(frozen=True)
class BalancedState:
    """A two-faction assignment derived from one spanning tree."""

    vertex_signs: np.ndarray  # +1 / -1 per vertex, relative to vertex 0
    frustration: int          # edges whose sign disagrees with the assignment
    tree_edges: tuple         # spanning-tree edge indices into the graph


@dataclass(frozen=True)
class StatusInfluence:
    status: np.ndarray
    influence: np.ndarray
    samples: int


@dataclass(frozen=True)
class HararyResult:
    balanced: bool
    parts: Labeling | None
    witness_cycle: tuple | None


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the smaller id as representative
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _require_connected(graph, positive_only=False):
    comps = connected_components(graph, positive_only=positive_only)
    if len(comps) != 1:
        what = "positive subgraph" if positive_only else "graph"
        raise NotConnectedError(
            f"{what} has {len(comps)} components; take the GCC first"
        )


def _propagate_signs(graph, tree_edge_idx):
    """Vertex signs from sign propagation over a spanning tree (root 0)."""
    n = graph.n_vertices
    adj = [[] for _ in range(n)]
    for e in tree_edge_idx:
        a, b, s = int(graph.u[e]), int(graph.v[e]), int(graph.sign[e])
        adj[a].append((b, s))
        adj[b].append((a, s))
    signs = np.zeros(n, dtype=np.int8)
    signs[0] = 1
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, s in adj[x]:
            if signs[y] == 0:
                signs[y] = signs[x] * s
                queue.append(y)
    return signs


def _state_frustration(graph, signs):
    agree = graph.sign == signs[graph.u] * signs[graph.v]
    return int(np.sum(~agree))


def harary_bipartition(graph):
    """Decide balance; return the Harary bipartition or a violating cycle.

    Signs are propagated over a BFS spanning tree; the graph is balanced iff
    every non-tree edge is consistent with the propagated signs. The witness
    for an inconsistent edge is its tree path closed by the edge (an
    odd-signed cycle).
    """
    _require_connected(graph)
    n = graph.n_vertices
    adj = [[] for _ in range(n)]
    for e in range(graph.n_edges):
        a, b, s = int(graph.u[e]), int(graph.v[e]), int(graph.sign[e])
        adj[a].append((b, s, e))
        adj[b].append((a, s, e))
    signs = np.zeros(n, dtype=np.int8)
    parent = np.full(n, -1, dtype=np.int64)
    tree = set()
    signs[0] = 1
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, s, e in adj[x]:
            if signs[y] == 0:
                signs[y] = signs[x] * s
                parent[y] = x
                tree.add(e)
                queue.append(y)
    for e in range(graph.n_edges):
        if e in tree:
            continue
        a, b, s = int(graph.u[e]), int(graph.v[e]), int(graph.sign[e])
        if signs[a] * signs[b] != s:
            return HararyResult(False, None, _tree_cycle(parent, a, b))
    labels = (signs < 0).astype(np.int64)
    return HararyResult(True, Labeling.relabeled_dense(labels), None)


def _tree_cycle(parent, a, b):
    path_a = [a]
    while parent[path_a[-1]] >= 0:
        path_a.append(int(parent[path_a[-1]]))
    anc = {x: i for i, x in enumerate(path_a)}
    path_b = [b]
    while path_b[-1] not in anc:
        path_b.append(int(parent[path_b[-1]]))
    meet = anc[path_b[-1]]
    return tuple(path_a[:meet + 1] + path_b[-2::-1])


def harary_cluster(graph, k_inner, seed=0, restarts=DEFAULT_RESTARTS):
    """Cluster a balanced graph: Harary cut, then unsigned spectral
    clustering inside each side (k_inner clusters per nonempty side)."""
    result = harary_bipartition(graph)
    if not result.balanced:
        raise NotBalancedError(
            "graph is unbalanced; Harary clustering only applies to balanced "
            "graphs (use graphB/spectral methods instead)"
        )
    labels = np.full(graph.n_vertices, -1, dtype=np.int64)
    offset = 0
    for side in range(result.parts.n_clusters):
        members = np.flatnonzero(result.parts.labels == side)
        if len(members) == 0:
            continue
        sub, _ = graph.induced_subgraph(members)
        k_eff = min(k_inner, len(members))
        if k_eff <= 1 or sub.n_edges == 0:
            labels[members] = offset
            offset += 1
            continue
        inner = spectral_cluster(sub.positive_subgraph(), "unsigned", k_eff,
                                 seed=seed, restarts=restarts)
        labels[members] = inner.labels + offset
        offset += inner.n_clusters
    return Labeling.relabeled_dense(labels)


def weak_balance_cluster(graph):
    """Partition a complete signed graph into mutually antagonistic positive
    cliques, or report the edge witnessing that none exists.

    Returns ``(labeling, None)`` when weakly balanced, else
    ``(None, (u, v))`` for a negative edge inside a positive component.
    """
    n = graph.n_vertices
    if graph.n_edges != n * (n - 1) // 2:
        raise MethodError("weak balance is defined for complete graphs only")
    uf = _UnionFind(n)
    for a, b, s in zip(graph.u, graph.v, graph.sign):
        if s > 0:
            uf.union(int(a), int(b))
    comp = np.asarray([uf.find(i) for i in range(n)])
    for a, b, s in zip(graph.u, graph.v, graph.sign):
        if s < 0 and comp[a] == comp[b]:
            return None, (int(a), int(b))
    return Labeling.relabeled_dense(comp), None


def matrix_completion_cluster(graph, k, seed=0, restarts=DEFAULT_RESTARTS):
    """Cluster by completing the sign structure to a (nearly) balanced one.

    Missing pairs take the sign of the rank-k spectral reconstruction of the
    adjacency matrix (entries reconstructed as exactly 0 stay absent), then
    the rows of the top-k eigenvectors of the completed adjacency feed
    k-means. Dense; intended for desk-scale graphs.
    """
    if k < 2:
        raise MethodError("matrix_completion_cluster needs k >= 2")
    a = graph.adjacency.toarray()
    n = graph.n_vertices
    vals, vecs = np.linalg.eigh(a)
    top = np.argsort(vals)[::-1][:k]
    recon = (vecs[:, top] * vals[top][None, :]) @ vecs[:, top].T
    completed = a.copy()
    absent = (a == 0) & ~np.eye(n, dtype=bool)
    completed[absent] = np.sign(recon[absent])
    vals_c, vecs_c = np.linalg.eigh(completed)
    top_c = np.argsort(vals_c)[::-1][:k]
    embedding = vecs_c[:, top_c]
    return kmeans_pp(embedding, k, restarts=restarts, seed=seed).labels


# ---------------------------------------------------------------------------
# frustration cloud
# ---------------------------------------------------------------------------

def _random_spanning_tree(graph, rng):
    """Spanning tree via random edge weights + Kruskal (approximate
    uniformity; cheap and unbiased enough for feature sampling)."""
    order = np.argsort(rng.random(graph.n_edges), kind="stable")
    uf = _UnionFind(graph.n_vertices)
    picked = []
    for e in order:
        if uf.union(int(graph.u[e]), int(graph.v[e])):
            picked.append(int(e))
            if len(picked) == graph.n_vertices - 1:
                break
    return tuple(sorted(picked))


def sample_balanced_states(graph, trees, seed=0):
    """Sample nearest-balanced states from random spanning trees.

    Each tree fixes vertex signs by propagation from vertex 0; the state's
    frustration counts edges disagreeing with those signs (0 for every tree
    iff the graph is balanced).
    """
    if trees < 1:
        raise ValueError("need at least one tree")
    _require_connected(graph)
    seeds = np.random.SeedSequence(seed).spawn(trees)
    states = []
    for ss in seeds:
        rng = np.random.default_rng(ss)
        tree = _random_spanning_tree(graph, rng)
        signs = _propagate_signs(graph, tree)
        states.append(BalancedState(
            vertex_signs=signs,
            frustration=_state_frustration(graph, signs),
            tree_edges=tree,
        ))
    return states


def status_influence(graph, states):
    """Per-vertex majority statistics over sampled balanced states.

    status[v]: fraction of states whose majority faction contains v.
    influence[v]: mean over states of the fraction of v's incident edges
    lying inside the majority, counted only when v itself is in the majority
    (ties go to the faction of vertex 0). influence <= status pointwise.
    """
    if not states:
        raise ValueError("need at least one balanced state")
    n = graph.n_vertices
    deg = graph.degrees.astype(float)
    status = np.zeros(n)
    influence = np.zeros(n)
    for state in states:
        signs = state.vertex_signs
        n_plus = int(np.sum(signs > 0))
        n_minus = n - n_plus
        if n_plus > n_minus:
            majority = signs > 0
        elif n_minus > n_plus:
            majority = signs < 0
        else:
            majority = signs == signs[0]
        status += majority
        inside = majority[graph.u] & majority[graph.v]
        counts = np.zeros(n)
        np.add.at(counts, graph.u[inside], 1.0)
        np.add.at(counts, graph.v[inside], 1.0)
        with np.errstate(invalid="ignore", divide="ignore"):
            frac = np.where(deg > 0, counts / deg, 0.0)
        influence += np.where(majority, frac, 0.0)
    m = len(states)
    return StatusInfluence(status / m, influence / m, m)


def graphb_km_cluster(graph, k, trees=1000, seed=0, restarts=DEFAULT_RESTARTS):
    """k-means++ in graph-balancing (status, influence) space."""
    states = sample_balanced_states(graph, trees, seed=seed)
    si = status_influence(graph, states)
    features = np.column_stack([si.status, si.influence])
    return kmeans_pp(features, k, restarts=restarts, seed=seed).labels
