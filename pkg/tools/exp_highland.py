"""Exploratory search for the highland fixture structure (run by hand)."""

import itertools
import sys
import time

import numpy as np

sys.path.insert(0, "tools")
from fixture_lib import EdgeSoup, anneal_bal3, partition_from_sizes

from sgclust.graphs import compute_stats, greatest_connected_component
from sgclust.metrics import adjusted_rand_index
from sgclust.spectral import SpongeConfig, bnc_cluster, spectral_cluster, sponge_cluster
from sgclust.walks import fcsg_cluster, RwgConfig
from sgclust.balance import graphb_km_cluster
from sgclust.linalg import eigengap_suggest_k, smallest_k_eigenpairs
from sgclust.spectral import build_laplacian

BLUE = list(range(0, 4))
RED = list(range(4, 9))
GREEN = list(range(9, 16))
GROUND = partition_from_sizes([4, 5, 7])

ALL_PAIRS = {
    "blue": list(itertools.combinations(BLUE, 2)),
    "red": list(itertools.combinations(RED, 2)),
    "green": list(itertools.combinations(GREEN, 2)),
}
CROSS = {
    "br": [(a, b) for a in BLUE for b in RED],
    "bg": [(a, b) for a in BLUE for b in GREEN],
    "rg": [(a, b) for a in RED for b in GREEN],
}


def connected(pairs, vertices):
    adj = {v: set() for v in vertices}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vertices)


def sample_internal(pairs, vertices, count, rng):
    for _ in range(200):
        take = rng.choice(len(pairs), size=count, replace=False)
        chosen = [pairs[i] for i in take]
        if connected(chosen, vertices):
            return chosen
    return None


def sample_structure(rng, alloc, golden, blue_int=5, red_int=8, green_int=14):
    pos = []
    for name, count, verts in (("blue", blue_int, BLUE), ("red", red_int, RED),
                               ("green", green_int, GREEN)):
        chosen = sample_internal(ALL_PAIRS[name], verts, count, rng)
        if chosen is None:
            return None
        pos += chosen
    rg = CROSS["rg"]
    cross_pos = [rg[i] for i in rng.choice(len(rg), size=2, replace=False)]
    pos += cross_pos
    neg = []
    for key, want in alloc.items():
        pool = [p for p in CROSS[key]
                if p not in cross_pos and p[0] not in golden and p[1] not in golden]
        if len(pool) < want:
            return None
        take = rng.choice(len(pool), size=want, replace=False)
        neg += [pool[i] for i in take]
    return EdgeSoup(16, pos, neg), set(cross_pos)


def neg_moves(cross_pos, golden):
    def pair_type(p):
        a, b = p
        ta = "b" if a in BLUE else ("r" if a in RED else "g")
        tb = "b" if b in BLUE else ("r" if b in RED else "g")
        return "".join(sorted((ta, tb))).replace("gr", "rg")

    pools = {k: [p for p in CROSS[k]
                 if p not in cross_pos and p[0] not in golden and p[1] not in golden]
             for k in CROSS}

    def moves(soup, rng):
        current = sorted(soup.neg)
        for _ in range(60):
            old = current[rng.integers(len(current))]
            pool = pools[pair_type(old)]
            new = pool[rng.integers(len(pool))]
            if new in soup.neg or new == old:
                continue
            def apply(o=old, n=new):
                soup.neg.discard(o)
                soup.neg.add(n)
            def undo(o=old, n=new):
                soup.neg.discard(n)
                soup.neg.add(o)
            return apply, undo
        return None
    return moves


def run_methods(g, seeds=(0, 1)):
    out = {}
    for name, fn in (
        ("lap_none", lambda s: spectral_cluster(g, "signed", 3, seed=s)),
        ("lap_sym", lambda s: spectral_cluster(g, "signed_sym", 3, seed=s)),
        ("lap_sep", lambda s: spectral_cluster(g, "signed_sym_separated", 3, seed=s)),
        ("BNC_none", lambda s: bnc_cluster(g, 3, symmetric=False, seed=s)),
        ("BNC_sym", lambda s: bnc_cluster(g, 3, symmetric=True, seed=s)),
        ("SPONGE_none", lambda s: sponge_cluster(g, 3, SpongeConfig(), seed=s)),
        ("SPONGE_sym", lambda s: sponge_cluster(g, 3, SpongeConfig(symmetric=True), seed=s)),
    ):
        out[name] = [adjusted_rand_index(fn(s), GROUND) for s in seeds]
    out["FCSG"] = [adjusted_rand_index(fcsg_cluster(g, RwgConfig(5)), GROUND)]
    return out


def main():
    t0 = time.time()
    allocs = [
        {"br": 13, "bg": 3, "rg": 13},
        {"br": 12, "bg": 4, "rg": 13},
        {"br": 14, "bg": 3, "rg": 12},
        {"br": 12, "bg": 3, "rg": 14},
    ]
    goldens = [frozenset({9}), frozenset({9, 4}), frozenset({9, 10})]
    found = 0
    trial = -1
    for alloc in allocs:
        for golden in goldens:
            for rep in range(120):
                trial += 1
                rng = np.random.default_rng(7000 + trial)
                sampled = sample_structure(rng, alloc, golden)
                if sampled is None:
                    continue
                soup, cross_pos = sampled
                if soup.degrees().max() > 10:
                    continue
                if not anneal_bal3(soup, 0.868, neg_moves(cross_pos, golden),
                                   rng, max_steps=1500):
                    continue
                deg = soup.degrees()
                if deg.max() > 10 or float(np.median(deg)) != 7.5:
                    continue
                g = soup.graph()
                gcc, _ = greatest_connected_component(g, "positive_only")
                if gcc.n_vertices != 12:
                    continue
                vals = smallest_k_eigenpairs(build_laplacian(g, "signed"), 6).values
                gap_k = eigengap_suggest_k(vals, 4)
                if gap_k != 3:
                    continue
                res = run_methods(g)
                perfect = all(min(res[m]) == 1.0 for m in
                              ("lap_none", "lap_sym", "BNC_none", "BNC_sym",
                               "SPONGE_none", "SPONGE_sym", "FCSG"))
                st = compute_stats(g)
                print(f"t{trial} alloc={alloc} golden={sorted(golden)}: "
                      f"bal3={st.bal3:.4f} perfect={perfect} lap_sep={res['lap_sep']}")
                if perfect and max(res["lap_sep"]) < 0.55:
                    gb = [adjusted_rand_index(
                        graphb_km_cluster(g, 3, trees=1000, seed=s), GROUND)
                        for s in (0, 1)]
                    print("   graphB:", gb, "spectrum:", np.round(vals, 3))
                    if min(gb) == 1.0:
                        found += 1
                        print(f"   *** candidate trial={trial}")
                        rows = [(a, b, 1) for a, b in sorted(soup.pos)] + \
                               [(a, b, -1) for a, b in sorted(soup.neg)]
                        np.save(f"/tmp/highland_cand_{trial}.npy", np.array(rows))
                        if found >= 3:
                            return
                if time.time() - t0 > 480:
                    print("timeout")
                    return
    print("done", time.time() - t0)


if __name__ == "__main__":
    main()
