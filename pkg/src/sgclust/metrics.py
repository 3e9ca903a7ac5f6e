"""Clustering-quality metrics: ARI, edge agreement, mutual-ARI matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .graphs import Labeling


def _pair_count(x):
    return x * (x - 1) // 2


def adjusted_rand_index(a, b):
    """Pair-counting adjusted Rand index of two labelings.

    Vertices unassigned in either labeling are excluded pairwise. 1 means
    identical set-partitions, values near 0 a chance-level pairing; the
    index can go negative.
    """
    la = a.labels if isinstance(a, Labeling) else np.asarray(a)
    lb = b.labels if isinstance(b, Labeling) else np.asarray(b)
    if len(la) != len(lb):
        raise ValueError("labelings must have equal length")
    keep = (la >= 0) & (lb >= 0)
    if not keep.any():
        raise ValueError("ARI undefined: no vertex assigned in both labelings")
    la = la[keep]
    lb = lb[keep]
    n = len(la)
    _, ia = np.unique(la, return_inverse=True)
    _, ib = np.unique(lb, return_inverse=True)
    contingency = np.zeros((ia.max() + 1, ib.max() + 1), dtype=np.int64)
    np.add.at(contingency, (ia, ib), 1)
    sum_cells = _pair_count(contingency).sum()
    sum_rows = _pair_count(contingency.sum(axis=1)).sum()
    sum_cols = _pair_count(contingency.sum(axis=0)).sum()
    total = _pair_count(n)
    expected = sum_rows * sum_cols / total if total else 0.0
    max_index = (sum_rows + sum_cols) / 2.0
    if max_index == expected:
        return 1.0
    return float((sum_cells - expected) / (max_index - expected))


def edge_agreement(graph, labeling):
    """(pos_in, neg_out): fractions of positive edges kept inside clusters
    and negative edges placed between clusters.

    Unassigned vertices count as one shared extra cluster. neg_out is None
    when the graph has no negative edge.
    """
    labels = labeling.labels.copy()
    labels[labeling.unassigned_mask] = labeling.n_clusters
    lu = labels[graph.u]
    lv = labels[graph.v]
    same = lu == lv
    pos = graph.sign > 0
    neg = ~pos
    e_pos = int(pos.sum())
    e_neg = int(neg.sum())
    pos_in = float(np.sum(pos & same) / e_pos) if e_pos else 1.0
    neg_out = float(np.sum(neg & ~same) / e_neg) if e_neg else None
    return pos_in, neg_out


def mutual_ari_matrix(named_labelings):
    """Symmetric ARI matrix over a sequence of (name, Labeling) pairs."""
    named_labelings = list(named_labelings)
    if len(named_labelings) < 2:
        raise ValueError("need at least two labelings")
    names = [name for name, _ in named_labelings]
    k = len(names)
    m = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            m[i, j] = m[j, i] = adjusted_rand_index(
                named_labelings[i][1], named_labelings[j][1]
            )
    return names, m


@dataclass
class EvalReport:
    method: str
    dataset: str
    k: int
    pos_in: float
    neg_out: float | None
    runtime_seconds: float
    community_sizes: list = field(default_factory=list)
    ari_vs_ground: float | None = None

    def to_json(self):
        payload = dict(self.__dict__)
        payload["community_sizes"] = [int(x) for x in self.community_sizes]
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_run(cls, method, dataset, k, graph, labeling, runtime_seconds,
                 ground=None):
        pos_in, neg_out = edge_agreement(graph, labeling)
        ari = None
        if ground is not None:
            ari = adjusted_rand_index(labeling, ground)
        return cls(
            method=method,
            dataset=dataset,
            k=k,
            pos_in=pos_in,
            neg_out=neg_out,
            runtime_seconds=runtime_seconds,
            community_sizes=labeling.cluster_sizes(descending=True).tolist(),
            ari_vs_ground=ari,
        )


def write_mutual_ari_csv(path, names, matrix):
    with open(path, "w") as fh:
        fh.write("method," + ",".join(names) + "\n")
        for name, row in zip(names, matrix):
            fh.write(name + "," + ",".join(f"{x:.6f}" for x in row) + "\n")


def read_mutual_ari_csv(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")[1:]
        rows = []
        for line in fh:
            rows.append([float(x) for x in line.strip().split(",")[1:]])
    return header, np.asarray(rows)
