"""Seeded random graph, weight, and attribute generation.

All generators are deterministic given their seed.  RNG streams are split
per purpose (topology / weights / attributes / rewiring) through numpy
SeedSequence spawn keys, so e.g. changing an attribute condition never
perturbs the topology drawn from the same seed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RetryLimitExceededError
from .graph import Graph, NodeQuantities, RejectReason, classify, from_arrays, is_connected

_TOPOLOGY, _WEIGHTS, _ATTRIBUTES, _REWIRE = 0, 1, 2, 3


def child_seed(seed: int, *key: int) -> np.random.SeedSequence:
    """A reproducible child stream of ``seed`` addressed by integer key."""
    return np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in key))


def derive_seed(seed: int, *key: int) -> int:
    """A plain 64-bit integer seed derived from (seed, key)."""
    return int(child_seed(seed, *key).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class GnpSpec:
    """G(n, p) with integer edge weights uniform on [1, weight_max].

    The defaults n=1000, p=0.02, weight_max=10 reproduce the reference
    simulation setup.
    """

    n: int = 1000
    p: float = 0.02
    weight_max: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not (0.0 < self.p <= 1.0):
            raise ValueError(f"p must be in (0, 1], got {self.p}")
        if self.weight_max < 1:
            raise ValueError(f"weight_max must be >= 1, got {self.weight_max}")


@dataclass(frozen=True)
class ConditionSpec:
    """Attribute-shift condition: a_i = z_i + (j/100) * d_i with z ~ N(0,1)."""

    j: int

    def __post_init__(self):
        if not (-100 <= self.j <= 100):
            raise ValueError(f"condition j must be in [-100, 100], got {self.j}")


@dataclass(frozen=True)
class Acceptance:
    accepted: bool
    reason: RejectReason | None = None


def generate_gnp(spec: GnpSpec) -> Graph:
    """Each unordered pair is an edge independently with probability p;
    each edge weight is a uniform integer in [1, weight_max].
    """
    topo = np.random.default_rng(child_seed(spec.seed, _TOPOLOGY))
    n = spec.n
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    for i in range(n - 1):
        hits = np.flatnonzero(topo.random(n - 1 - i) < spec.p)
        if hits.size:
            us.append(np.full(hits.size, i, dtype=np.int64))
            vs.append(hits.astype(np.int64) + i + 1)
    if us:
        u = np.concatenate(us)
        v = np.concatenate(vs)
    else:
        u = np.empty(0, dtype=np.int64)
        v = np.empty(0, dtype=np.int64)
    weights = np.random.default_rng(child_seed(spec.seed, _WEIGHTS))
    w = weights.integers(1, spec.weight_max + 1, size=u.size).astype(np.float64)
    return from_arrays(n, u, v, w, validated=True)


def accept_graph(g: Graph) -> Acceptance:
    """Accept only connected, non-regular, non-weighted-regular graphs."""
    cls = classify(g)
    if not cls.connected:
        return Acceptance(False, RejectReason.DISCONNECTED)
    if cls.regular:
        return Acceptance(False, RejectReason.REGULAR)
    if cls.weighted_regular:
        return Acceptance(False, RejectReason.WEIGHTED_REGULAR)
    return Acceptance(True)


def generate_accepted_gnp(spec: GnpSpec, max_attempts: int = 1000) -> tuple[Graph, int]:
    """Regenerate (with attempt-derived seeds) until accept_graph passes.

    Returns the accepted graph and the number of discarded attempts.
    """
    for attempt in range(max_attempts):
        g = generate_gnp(
            GnpSpec(spec.n, spec.p, spec.weight_max, seed=derive_seed(spec.seed, attempt))
        )
        if accept_graph(g).accepted:
            return g, attempt
    raise RetryLimitExceededError(
        f"no accepted G({spec.n}, {spec.p}) graph in {max_attempts} attempts"
    )


def synthesize_attributes(q: NodeQuantities, cond: ConditionSpec, seed) -> np.ndarray:
    """a_i = z_i + (j/100) * d_i with z drawn i.i.d. standard normal.

    The base draw z depends only on the seed, so running several
    conditions with one seed alters the same underlying sequence.
    """
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(q.n)
    return z + (cond.j / 100.0) * q.degree.astype(np.float64)


def configuration_rewire(g: Graph, seed, max_retries: int = 100) -> Graph:
    """Stub-matching configuration model on g's degree sequence.

    Self-loops and parallel edges are removed (so some degrees may drop),
    and the whole procedure is redone until the result is connected.
    Node attributes and labels carry over unchanged; edge weights do not
    (the output has unit weights; assign weights separately).
    """
    stubs = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    for attempt in range(max_retries):
        rng = np.random.default_rng(child_seed(_coerce_seed(seed), _REWIRE, attempt))
        perm = rng.permutation(stubs)
        u, v = perm[0::2], perm[1::2]
        keep = u != v
        u, v = u[keep], v[keep]
        pairs = np.unique(np.stack([np.minimum(u, v), np.maximum(u, v)], axis=1), axis=0)
        candidate = from_arrays(
            g.n,
            pairs[:, 0],
            pairs[:, 1],
            np.ones(pairs.shape[0], dtype=np.float64),
            attributes=g.attributes,
            labels=g.labels,
            validated=True,
        )
        if is_connected(candidate):
            return candidate
    raise RetryLimitExceededError(f"no connected rewiring in {max_retries} attempts")


def assign_bernoulli_weights(g: Graph, p2: float, seed) -> Graph:
    """Each edge independently gets weight 2 with probability p2, else 1."""
    rng = np.random.default_rng(seed)
    w = np.where(rng.random(g.m) < p2, 2.0, 1.0)
    return g.with_weights(w)


def _coerce_seed(seed) -> int:
    if isinstance(seed, np.random.SeedSequence):
        return int(seed.generate_state(1, np.uint64)[0])
    return int(seed)


@dataclass(frozen=True)
class TwoBlockSpec:
    """Homophilous two-block graph with categorical node metadata.

    Edges within block 1 / block 2 / across appear with probabilities
    p_in1 / p_in2 / p_out.  The "group" column equals the node's block
    except for a group_flip fraction; the "cohort" column is drawn from
    cohort_count values with a mild per-block preference (cohort_bias is
    the probability of drawing from the block's preferred half).
    """

    n1: int
    n2: int
    p_in1: float
    p_in2: float
    p_out: float
    group_flip: float = 0.1
    cohort_count: int = 4
    cohort_bias: float = 0.3
    seed: int = 0


def generate_two_block(spec: TwoBlockSpec, max_attempts: int = 200) -> tuple[Graph, dict]:
    """Generate a connected two-block graph plus its node metadata table.

    Returns (graph, metadata) where metadata maps node label to
    {"group": ..., "cohort": ...}.
    """
    n = spec.n1 + spec.n2
    block = np.concatenate([np.zeros(spec.n1, dtype=np.int64), np.ones(spec.n2, dtype=np.int64)])
    for attempt in range(max_attempts):
        topo = np.random.default_rng(child_seed(spec.seed, _TOPOLOGY, attempt))
        us: list[np.ndarray] = []
        vs: list[np.ndarray] = []
        for i in range(n - 1):
            js = np.arange(i + 1, n)
            same = block[js] == block[i]
            p_row = np.where(
                same, np.where(block[i] == 0, spec.p_in1, spec.p_in2), spec.p_out
            )
            hits = js[topo.random(js.size) < p_row]
            if hits.size:
                us.append(np.full(hits.size, i, dtype=np.int64))
                vs.append(hits)
        if not us:
            continue
        u = np.concatenate(us)
        v = np.concatenate(vs)
        g = from_arrays(
            n,
            u,
            v,
            np.ones(u.size, dtype=np.float64),
            labels=[str(i + 1) for i in range(n)],
            validated=True,
        )
        if accept_graph(g).accepted:
            break
    else:
        raise RetryLimitExceededError(f"no accepted two-block graph in {max_attempts} attempts")

    meta_rng = np.random.default_rng(child_seed(spec.seed, _ATTRIBUTES))
    flip = meta_rng.random(n) < spec.group_flip
    group = np.where(flip, 1 - block, block)
    half = max(1, spec.cohort_count // 2)
    preferred = meta_rng.integers(0, half, size=n) + block * half
    anywhere = meta_rng.integers(0, spec.cohort_count, size=n)
    cohort = np.where(meta_rng.random(n) < spec.cohort_bias, preferred, anywhere)
    metadata = {
        str(i + 1): {"group": f"g{group[i]}", "cohort": f"c{cohort[i]}"} for i in range(n)
    }
    return g, metadata


_CORPUS_SPEC, _CORPUS_SEED = 100, 200


def two_block_corpus(count: int, master_seed: int) -> list[tuple[Graph, dict]]:
    """A seeded corpus of campus-like two-block networks with metadata.

    Block sizes, densities, and metadata noise vary per network so gaps
    and correlations spread across the corpus.
    """
    corpus = []
    for i in range(count):
        rng = np.random.default_rng(child_seed(master_seed, _CORPUS_SPEC, i))
        spec = TwoBlockSpec(
            n1=int(rng.integers(120, 201)),
            n2=int(rng.integers(90, 161)),
            p_in1=float(rng.uniform(0.10, 0.20)),
            p_in2=float(rng.uniform(0.05, 0.12)),
            p_out=float(rng.uniform(0.01, 0.03)),
            group_flip=float(rng.uniform(0.05, 0.15)),
            cohort_count=4,
            cohort_bias=float(rng.uniform(0.2, 0.4)),
            seed=derive_seed(master_seed, _CORPUS_SEED, i),
        )
        corpus.append(generate_two_block(spec))
    return corpus
