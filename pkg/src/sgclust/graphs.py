"""Signed-graph representation, ingestion and structural statistics.

A :class:`SignedGraph` is an immutable, undirected, simple graph whose edges
carry a sign in {+1, -1} and a positive weight (1.0 unless the source data
says otherwise). Vertex ids are dense in ``[0, n_vertices)``; the original
ids of ingested files are kept around for label alignment.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .errors import (
    AugmentationError,
    EdgeListParseError,
    UndefinedStatError,
)

UNASSIGNED = -1


def _frozen(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SignedGraph:
    """Undirected simple graph with +/-1 edge signs.

    Edges are stored canonically with ``u < v``. Construction validates the
    invariants (no self-loops, no duplicates, signs in {+1,-1}); use
    :func:`load_edge_list` for raw data that still needs cleaning.
    """

    n_vertices: int
    u: np.ndarray
    v: np.ndarray
    sign: np.ndarray
    weight: np.ndarray
    original_ids: np.ndarray = None

    def __post_init__(self):
        n = self.n_vertices
        u = _frozen(np.asarray(self.u, dtype=np.int64))
        v = _frozen(np.asarray(self.v, dtype=np.int64))
        s = _frozen(np.asarray(self.sign, dtype=np.int8))
        w = _frozen(np.asarray(self.weight, dtype=np.float64))
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "sign", s)
        object.__setattr__(self, "weight", w)
        if self.original_ids is None:
            object.__setattr__(self, "original_ids", _frozen(np.arange(n)))
        else:
            object.__setattr__(self, "original_ids", _frozen(np.asarray(self.original_ids)))
        if not (len(u) == len(v) == len(s) == len(w)):
            raise ValueError("edge arrays must have equal length")
        if len(u) and (u.min() < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("vertex ids must lie in [0, n_vertices)")
        if np.any(u >= v):
            raise ValueError("edges must be canonical (u < v) and loop-free")
        if not np.all(np.isin(s, (-1, 1))):
            raise ValueError("signs must be +1 or -1")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        pairs = u * n + v
        if len(np.unique(pairs)) != len(pairs):
            raise ValueError("duplicate edges")

    @classmethod
    def from_edges(cls, n_vertices, edges, original_ids=None):
        """Build from an iterable of (u, v, sign) or (u, v, sign, weight)."""
        rows = list(edges)
        if rows:
            arr = np.asarray([r[:3] for r in rows], dtype=np.int64)
            w = np.asarray(
                [r[3] if len(r) > 3 else 1.0 for r in rows], dtype=np.float64
            )
            uu = np.minimum(arr[:, 0], arr[:, 1])
            vv = np.maximum(arr[:, 0], arr[:, 1])
            order = np.lexsort((vv, uu))
            return cls(n_vertices, uu[order], vv[order], arr[order, 2], w[order],
                       original_ids=original_ids)
        empty = np.empty(0)
        return cls(n_vertices, empty, empty, empty, np.empty(0), original_ids=original_ids)

    # -- basic counts ----------------------------------------------------

    @property
    def n_edges(self):
        return len(self.u)

    @property
    def n_positive(self):
        return int(np.sum(self.sign > 0))

    @property
    def n_negative(self):
        return int(np.sum(self.sign < 0))

    # -- matrix views ----------------------------------------------------

    def _coo(self, mask, values):
        i = np.concatenate([self.u[mask], self.v[mask]])
        j = np.concatenate([self.v[mask], self.u[mask]])
        d = np.concatenate([values[mask], values[mask]])
        return sp.csr_matrix((d, (i, j)), shape=(self.n_vertices, self.n_vertices))

    @cached_property
    def adjacency(self):
        """Signed adjacency: entry (i, j) = sign * weight."""
        return self._coo(np.ones(self.n_edges, dtype=bool), self.sign * self.weight)

    @cached_property
    def abs_adjacency(self):
        return self._coo(np.ones(self.n_edges, dtype=bool), self.weight)

    @cached_property
    def pos_adjacency(self):
        """A+: weights of positive edges only (nonnegative matrix)."""
        return self._coo(self.sign > 0, self.weight)

    @cached_property
    def neg_adjacency(self):
        """A-: absolute weights of negative edges only (nonnegative matrix)."""
        return self._coo(self.sign < 0, self.weight)

    @cached_property
    def degrees(self):
        """Unsigned vertex degrees (edge counts, ignoring weights)."""
        return np.bincount(
            np.concatenate([self.u, self.v]), minlength=self.n_vertices
        )

    @cached_property
    def neighbor_lists(self):
        adj = [[] for _ in range(self.n_vertices)]
        for a, b, s, w in zip(self.u, self.v, self.sign, self.weight):
            adj[a].append((int(b), int(s), float(w)))
            adj[b].append((int(a), int(s), float(w)))
        return adj

    # -- derived graphs --------------------------------------------------

    def positive_subgraph(self):
        """Same vertex set, positive edges only."""
        mask = self.sign > 0
        return SignedGraph(self.n_vertices, self.u[mask], self.v[mask],
                           self.sign[mask], self.weight[mask],
                           original_ids=self.original_ids)

    def induced_subgraph(self, vertices):
        """Induced subgraph on ``vertices`` plus the old->new id map."""
        vertices = np.asarray(sorted(vertices), dtype=np.int64)
        old_to_new = np.full(self.n_vertices, UNASSIGNED, dtype=np.int64)
        old_to_new[vertices] = np.arange(len(vertices))
        keep = (old_to_new[self.u] >= 0) & (old_to_new[self.v] >= 0)
        sub = SignedGraph(
            len(vertices),
            old_to_new[self.u[keep]],
            old_to_new[self.v[keep]],
            self.sign[keep],
            self.weight[keep],
            original_ids=self.original_ids[vertices],
        )
        return sub, old_to_new

    def edge_set(self):
        return set(zip(self.u.tolist(), self.v.tolist()))


@dataclass(frozen=True)
class GraphStats:
    n_vertices: int
    n_edges: int
    n_positive: int
    n_negative: int
    density: float
    pct_positive: float
    degree_avg: float
    degree_median: float
    degree_max: int
    n_triangles: int
    bal3: float | None

    def to_json(self):
        return json.dumps(
            {k: v for k, v in self.__dict__.items()}, indent=2, sort_keys=True
        )


@dataclass
class Labeling:
    """Vertex -> cluster-id assignment.

    Cluster ids are dense in [0, k); UNASSIGNED (-1) marks vertices a method
    dropped. Methods that promise total labelings never emit UNASSIGNED.
    """

    labels: np.ndarray
    unassigned_mask: np.ndarray = field(init=False)

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.unassigned_mask = self.labels == UNASSIGNED
        assigned = self.labels[~self.unassigned_mask]
        if len(assigned):
            ids = np.unique(assigned)
            if ids[0] < 0 or not np.array_equal(ids, np.arange(len(ids))):
                raise ValueError("cluster ids must be dense in [0, k)")

    def __len__(self):
        return len(self.labels)

    @property
    def n_clusters(self):
        assigned = self.labels[~self.unassigned_mask]
        return int(assigned.max()) + 1 if len(assigned) else 0

    def cluster_sizes(self, descending=True):
        sizes = np.bincount(self.labels[~self.unassigned_mask],
                            minlength=self.n_clusters)
        return np.sort(sizes)[::-1] if descending else np.sort(sizes)

    @classmethod
    def from_sequence(cls, seq):
        return cls(np.asarray(list(seq), dtype=np.int64))

    @classmethod
    def relabeled_dense(cls, raw):
        """Compact arbitrary (hashable) labels into dense ids, keeping -1."""
        raw = list(raw)
        mapping = {}
        out = np.empty(len(raw), dtype=np.int64)
        for i, r in enumerate(raw):
            if r == UNASSIGNED:
                out[i] = UNASSIGNED
                continue
            if r not in mapping:
                mapping[r] = len(mapping)
            out[i] = mapping[r]
        return cls(out)


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

def _parse_line(raw, path, line_no):
    text = raw.split("#", 1)[0].strip()
    if not text:
        return None
    parts = text.replace(",", " ").split()
    if len(parts) < 3:
        raise EdgeListParseError(
            f"expected 'u v s', got {raw.strip()!r}", path, line_no
        )
    try:
        u, v, s = int(parts[0]), int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise EdgeListParseError(
            f"non-integer field in {raw.strip()!r}", path, line_no
        ) from exc
    if s not in (-1, 1):
        raise EdgeListParseError(f"sign must be +1 or -1, got {s}", path, line_no)
    return u, v, s


def load_edge_list(path, fmt="auto"):
    """Read a signed edge list, cleaning it into a valid SignedGraph.

    Lines are ``u v s`` with whitespace or comma separators and ``#``
    comments (both SNAP-style headers and plain csv parse the same way).
    Cleaning rules: self-loops dropped; duplicate (u, v) rows aggregated by
    sign sum, with a zero sum meaning the edge is ambivalent and removed;
    vertex ids compacted to a dense range (original ids kept on the graph).
    """
    if fmt not in ("auto", "snap", "csv"):
        raise ValueError(f"unknown format {fmt!r}")
    sums = defaultdict(int)
    order = {}
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            parsed = _parse_line(raw, path, line_no)
            if parsed is None:
                continue
            u, v, s = parsed
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            sums[key] += s
            order.setdefault(key, len(order))
    ids = sorted({x for uv in sums for x in uv})
    compact = {orig: i for i, orig in enumerate(ids)}
    edges = []
    for key in sorted(sums, key=order.get):
        total = sums[key]
        if total == 0:
            continue
        edges.append((compact[key[0]], compact[key[1]], 1 if total > 0 else -1))
    return SignedGraph.from_edges(
        len(ids), edges, original_ids=np.asarray(ids, dtype=np.int64)
    )


def save_edge_list(graph, path, header=None):
    with open(path, "w") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for a, b, s in zip(graph.u, graph.v, graph.sign):
            fh.write(f"{graph.original_ids[a]} {graph.original_ids[b]} {int(s)}\n")


def load_labels(path, graph=None):
    """Read a ``u label`` file; returns a Labeling aligned to ``graph``.

    Labels are compacted to dense ids in file order. Vertices of the graph
    missing from the file come back UNASSIGNED.
    """
    pairs = {}
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.replace(",", " ").split()
            if len(parts) < 2:
                raise EdgeListParseError(
                    f"expected 'u label', got {raw.strip()!r}", path, line_no
                )
            pairs[int(parts[0])] = parts[1]
    if graph is None:
        keys = sorted(pairs)
        raw = [pairs[k] for k in keys]
    else:
        raw = [
            pairs.get(int(orig), UNASSIGNED) for orig in graph.original_ids
        ]
    return Labeling.relabeled_dense(raw)


def save_labels(labeling, path, original_ids=None):
    n = len(labeling)
    ids = original_ids if original_ids is not None else np.arange(n)
    with open(path, "w") as fh:
        fh.write("vertex,cluster\n")
        for i in range(n):
            fh.write(f"{ids[i]},{labeling.labels[i]}\n")


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------

def connected_components(graph, positive_only=False):
    """List of vertex-index arrays, one per component, in min-vertex order."""
    mask = graph.sign > 0 if positive_only else np.ones(graph.n_edges, bool)
    m = graph._coo(mask, np.ones(graph.n_edges))
    n_comp, comp = sp.csgraph.connected_components(m, directed=False)
    return [np.flatnonzero(comp == c) for c in range(n_comp)]


def greatest_connected_component(graph, mode="all_edges"):
    """Induced subgraph on the largest component under the edge filter.

    Ties on size break toward the component containing the smallest vertex
    id. Returns ``(subgraph, old_to_new)`` where dropped vertices map to -1.
    """
    if mode not in ("all_edges", "positive_only"):
        raise ValueError(f"unknown mode {mode!r}")
    if graph.n_vertices == 0:
        return graph, np.empty(0, dtype=np.int64)
    comps = connected_components(graph, positive_only=mode == "positive_only")
    best = max(comps, key=lambda c: (len(c), -int(c.min())))
    return graph.induced_subgraph(best)


def triangle_signs(graph):
    """Yield (i, j, k, sign_product) for every triangle.

    Sorted-neighbor intersection on the underlying unsigned graph; fine at
    desk scale (O(sum deg^2)).
    """
    n = graph.n_vertices
    nbrs = [dict() for _ in range(n)]
    for a, b, s in zip(graph.u, graph.v, graph.sign):
        nbrs[a][int(b)] = int(s)
        nbrs[b][int(a)] = int(s)
    sorted_nbrs = [sorted(x for x in nbrs[i] if x > i) for i in range(n)]
    for i in range(n):
        for jpos, j in enumerate(sorted_nbrs[i]):
            for k in sorted_nbrs[i][jpos + 1:]:
                s_jk = nbrs[j].get(k)
                if s_jk is not None:
                    yield i, j, k, nbrs[i][j] * nbrs[i][k] * s_jk


def compute_stats(graph):
    """Structural statistics; density = 2e / (v (v-1)).

    bal3 is the fraction of triangles with positive sign product and is None
    when the graph has no triangle.
    """
    v = graph.n_vertices
    if v < 2:
        raise UndefinedStatError("density undefined for graphs with < 2 vertices")
    e = graph.n_edges
    tri = 0
    bal = 0
    for *_ijk, prod in triangle_signs(graph):
        tri += 1
        if prod > 0:
            bal += 1
    deg = graph.degrees
    return GraphStats(
        n_vertices=v,
        n_edges=e,
        n_positive=graph.n_positive,
        n_negative=graph.n_negative,
        density=2.0 * e / (v * (v - 1)),
        pct_positive=(100.0 * graph.n_positive / e) if e else 0.0,
        degree_avg=float(deg.mean()),
        degree_median=float(np.median(deg)),
        degree_max=int(deg.max()) if v else 0,
        n_triangles=tri,
        bal3=(bal / tri) if tri else None,
    )


# ---------------------------------------------------------------------------
# negative-edge augmentation
# ---------------------------------------------------------------------------

def augment_negative_edges(graph, labeling, ratio, seed):
    """Insert floor(ratio * e+) negative edges between distinct communities.

    Sampling picks a community pair uniformly, then a vertex uniformly inside
    each side, rejecting collisions with existing or already-added edges.
    Deterministic under ``seed``. Raises AugmentationError when fewer
    admissible cross-community vertex pairs exist than requested.
    """
    if graph.n_negative:
        raise AugmentationError("input graph must be all-positive")
    labels = labeling.labels
    if np.any(labeling.unassigned_mask):
        raise AugmentationError("labels must cover every vertex")
    if ratio < 0:
        raise AugmentationError("ratio must be nonnegative")
    target = int(np.floor(ratio * graph.n_positive))
    if target == 0:
        return graph

    k = labeling.n_clusters
    if k < 2:
        raise AugmentationError("need at least two communities")
    members = [np.flatnonzero(labels == c) for c in range(k)]
    existing = graph.edge_set()

    cross_existing = sum(
        1 for a, b in existing if labels[a] != labels[b]
    )
    admissible = 0
    for c in range(k):
        for d in range(c + 1, k):
            admissible += len(members[c]) * len(members[d])
    admissible -= cross_existing
    if admissible < target:
        raise AugmentationError(
            f"requested {target} negative edges but only {admissible} "
            f"non-adjacent cross-community pairs exist "
            f"(shortfall {target - admissible})"
        )

    rng = np.random.default_rng(seed)
    added = set()
    misses = 0
    while len(added) < target:
        if misses > 200 * (target + 10):
            # Degenerate tail: enumerate what is left and draw directly.
            pool = []
            for c in range(k):
                for d in range(c + 1, k):
                    for a in members[c]:
                        for b in members[d]:
                            key = (min(a, b), max(a, b))
                            if key not in existing and key not in added:
                                pool.append(key)
            pool.sort()
            take = rng.choice(len(pool), size=target - len(added), replace=False)
            for t in sorted(take):
                added.add(pool[t])
            break
        c, d = rng.choice(k, size=2, replace=False)
        a = members[c][rng.integers(len(members[c]))]
        b = members[d][rng.integers(len(members[d]))]
        key = (min(a, b), max(a, b))
        if key in existing or key in added:
            misses += 1
            continue
        added.add(key)

    new_u = np.concatenate([graph.u, [a for a, _ in sorted(added)]])
    new_v = np.concatenate([graph.v, [b for _, b in sorted(added)]])
    new_s = np.concatenate([graph.sign, np.full(len(added), -1, dtype=np.int8)])
    new_w = np.concatenate([graph.weight, np.ones(len(added))])
    return SignedGraph(graph.n_vertices, new_u, new_v, new_s, new_w,
                       original_ids=graph.original_ids)
