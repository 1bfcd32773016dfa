"""Shared test utilities: the golden 3-node fixture and seeded graph corpora."""
from __future__ import annotations

import math

import numpy as np

from fpgap.generators import GnpSpec, child_seed, derive_seed, generate_accepted_gnp
from fpgap.graph import Graph, build_graph, drop_isolates, from_arrays

# Golden fixture: path A-B-C with edge weights 1 (A-B) and 2 (B-C) and
# attributes (2, 0, 1).  All eight gaps are small exact rationals (lfp 1/6,
# sfp 1/3, lwfp 1/3, swfp 5/9, lafp -1/4, safp -1/2, lwafp -1/3, swafp -5/9)
# and the sign-rule correlations are pinned constants (r_da = r_delta_a =
# -sqrt(3)/2, r_wa = -1, r_gamma_a = -5/(2*sqrt(7))), so any regression in
# any code path shows up here first.
FIXTURE_EDGES = [(1, 2, 1.0), (2, 3, 2.0)]
FIXTURE_ATTRS = [2.0, 0.0, 1.0]

FIXTURE_EDGE_TEXT = "A B 1\nB C 2\n"
FIXTURE_META_TEXT = "node attr\nA 2\nB 0\nC 1\n"


def fixture_graph(with_attrs: bool = True) -> Graph:
    return build_graph(FIXTURE_EDGES, n=3, attributes=FIXTURE_ATTRS if with_attrs else None)


def star_graph(leaves: int = 3) -> Graph:
    return build_graph([(1, k, 1.0) for k in range(2, leaves + 2)], n=leaves + 1)


def cycle_graph(n: int = 4, weights=None) -> Graph:
    edges = [(i, i + 1, 1.0) for i in range(1, n)] + [(n, 1, 1.0)]
    if weights is not None:
        edges = [(i, j, w) for (i, j, _), w in zip(edges, weights)]
    return build_graph(edges, n=n)


def weighted_regular_not_regular() -> Graph:
    """C5 plus one chord, weighted so every weighted degree is 4 while
    degrees are [3, 2, 3, 2, 2]."""
    edges = [(1, 2, 2.0), (2, 3, 2.0), (3, 4, 1.0), (4, 5, 3.0), (5, 1, 1.0), (1, 3, 1.0)]
    return build_graph(edges, n=5)


def sample_np(seed: int, k: int, n_lo: int, n_hi: int, p_hi: float = 0.3) -> tuple[int, float]:
    """Sample (n, p) so connected G(n,p) graphs stay reachable by retry."""
    rng = np.random.default_rng(child_seed(seed, k))
    n = int(rng.integers(n_lo, n_hi + 1))
    p_lo = min(p_hi, max(0.02, (math.log(n) + 0.3) / n))
    p = float(rng.uniform(p_lo, p_hi))
    return n, p


def accepted_corpus(count: int, seed: int, n_lo: int = 10, n_hi: int = 300,
                    p_hi: float = 0.3, weight_max: int = 10) -> list[Graph]:
    graphs = []
    for k in range(count):
        n, p = sample_np(seed, k, n_lo, n_hi, p_hi)
        g, _ = generate_accepted_gnp(
            GnpSpec(n=n, p=p, weight_max=weight_max, seed=derive_seed(seed, k, 7))
        )
        graphs.append(g)
    return graphs


def random_small_graph(seed: int, max_n: int = 14, unit_weights: bool = False) -> Graph | None:
    """Arbitrary small graph (possibly disconnected) with isolates dropped;
    None when the draw has no edges."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_n + 1))
    p = float(rng.uniform(0.15, 0.8))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    if not pairs:
        return None
    u = np.array([a for a, _ in pairs], dtype=np.int64)
    v = np.array([b for _, b in pairs], dtype=np.int64)
    if unit_weights:
        w = np.ones(len(pairs))
    else:
        w = rng.integers(1, 11, size=len(pairs)).astype(np.float64)
    g = from_arrays(n, u, v, w, validated=True)
    g, _ = drop_isolates(g)
    return g
