"""Synthetic signed graphs: planted-partition samplers and a power-law
generator for the sparse-graph degradation study."""

from __future__ import annotations

import numpy as np

from .graphs import Labeling, SignedGraph


def planted_partition(sizes, p_in, p_out, frac_neg_in=0.0, frac_neg_out=1.0,
                      seed=0):
    """Signed stochastic blockmodel.

    Within-community pairs appear with probability p_in (negative with
    probability frac_neg_in), cross-community pairs with p_out (negative
    with probability frac_neg_out). Returns (graph, ground_truth).
    """
    rng = np.random.default_rng(seed)
    sizes = list(sizes)
    n = sum(sizes)
    labels = np.repeat(np.arange(len(sizes)), sizes)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            same = labels[i] == labels[j]
            p = p_in if same else p_out
            if rng.random() >= p:
                continue
            f = frac_neg_in if same else frac_neg_out
            sign = -1 if rng.random() < f else 1
            edges.append((i, j, sign))
    return SignedGraph.from_edges(n, edges), Labeling(labels)


def power_law_signed(n_vertices, n_edges, pct_positive=0.8, exponent=2.5,
                     seed=0):
    """Chung-Lu style power-law signed graph with exact vertex/edge counts.

    Expected degrees follow w_i ~ (i + i0)^(-1/(exponent-1)); edges are
    sampled without duplicates until n_edges distinct pairs exist, then the
    requested fraction gets a positive sign. Isolated vertices are attached
    by stealing an endpoint from a random heavy edge, keeping counts exact.
    """
    max_edges = n_vertices * (n_vertices - 1) // 2
    if n_edges > max_edges:
        raise ValueError("more edges requested than pairs available")
    rng = np.random.default_rng(seed)
    i0 = 10.0
    w = (np.arange(n_vertices) + i0) ** (-1.0 / (exponent - 1.0))
    p = w / w.sum()
    chosen = set()
    while len(chosen) < n_edges:
        batch = max(4 * (n_edges - len(chosen)), 1024)
        us = rng.choice(n_vertices, size=batch, p=p)
        vs = rng.choice(n_vertices, size=batch, p=p)
        for a, b in zip(us, vs):
            if a == b:
                continue
            key = (min(int(a), int(b)), max(int(a), int(b)))
            if key not in chosen:
                chosen.add(key)
                if len(chosen) == n_edges:
                    break
    edges = sorted(chosen)
    degree = np.zeros(n_vertices, dtype=np.int64)
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    isolated = list(np.flatnonzero(degree == 0))
    if isolated:
        edge_set = set(edges)
        candidates = [e for e in edges if degree[e[0]] > 2 and degree[e[1]] > 2]
        rng.shuffle(candidates)
        for vert, (a, b) in zip(isolated, candidates):
            new = (min(vert, a), max(vert, a))
            if new in edge_set:
                continue
            edge_set.discard((a, b))
            edge_set.add(new)
            degree[b] -= 1
            degree[vert] += 1
        edges = sorted(edge_set)
    n_pos = int(round(pct_positive * len(edges)))
    signs = np.full(len(edges), -1, dtype=np.int8)
    signs[rng.permutation(len(edges))[:n_pos]] = 1
    rows = [(a, b, int(s)) for (a, b), s in zip(edges, signs)]
    return SignedGraph.from_edges(n_vertices, rows)
