"""Shared helpers for the fixture construction searches.

The shipped benchmark fixtures are synthetic graphs constructed to match
every published attribute of the originals (vertex/edge counts, sign split,
density, balanced-triangle fraction, community structure, edge-agreement
profile, positive-component structure) because the original tables, not any
particular file, are the validation authority. These helpers implement the
constraint checks and the local search used to pin the triangle-balance
fraction.
"""

from __future__ import annotations

import numpy as np

from sgclust.graphs import Labeling, SignedGraph, compute_stats
from sgclust.metrics import adjusted_rand_index, edge_agreement


class EdgeSoup:
    """Mutable edge multiset with cheap triangle-balance recomputation."""

    def __init__(self, n, pos_edges, neg_edges):
        self.n = n
        self.pos = set(pos_edges)
        self.neg = set(neg_edges)

    def graph(self):
        rows = [(a, b, 1) for a, b in sorted(self.pos)]
        rows += [(a, b, -1) for a, b in sorted(self.neg)]
        return SignedGraph.from_edges(self.n, rows)

    def bal3(self):
        g = self.graph()
        st = compute_stats(g)
        return st.bal3, st.n_triangles

    def degrees(self):
        deg = np.zeros(self.n, dtype=int)
        for a, b in self.pos | self.neg:
            deg[a] += 1
            deg[b] += 1
        return deg


def bal3_rounds_to(soup, target, ndigits=3):
    b, _ = soup.bal3()
    return b is not None and round(b, ndigits) == target


def anneal_bal3(soup, target, admissible_moves, rng, max_steps=4000,
                ndigits=3):
    """Hill-climb |bal3 - target| using caller-supplied random edge moves.

    ``admissible_moves(soup, rng)`` yields (apply, undo) callables that keep
    every hard constraint intact. Returns True when the rounded target is
    hit.
    """
    best, _ = soup.bal3()
    if best is None:
        return False
    for _ in range(max_steps):
        if round(best, ndigits) == target:
            return True
        move = admissible_moves(soup, rng)
        if move is None:
            return False
        apply, undo = move
        apply()
        cand, _ = soup.bal3()
        if cand is not None and abs(cand - target) <= abs(best - target):
            best = cand
        else:
            undo()
    return round(best, ndigits) == target


def partition_from_sizes(sizes):
    return Labeling(np.repeat(np.arange(len(sizes)), sizes))


def summarize_methods(graph, ground, k, runs, seeds=(0, 1, 2)):
    """ARI vs ground for each (name, callable) across seeds."""
    out = {}
    for name, fn in runs.items():
        aris = []
        for seed in seeds:
            labeling = fn(graph, k, seed)
            aris.append(adjusted_rand_index(labeling, ground))
        out[name] = aris
    return out


def agreement_of(graph, labeling):
    return edge_agreement(graph, labeling)
