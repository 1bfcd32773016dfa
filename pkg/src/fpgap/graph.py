"""Weighted undirected simple graph model and first-order node quantities.

Node ids are 1..n in the public API (the math is index-based); vectors
returned by :func:`node_quantities` are position-aligned, so entry 0
belongs to node 1.  Internally everything is stored as 0-based numpy
arrays.  Graphs are immutable after construction and safe to share across
threads or worker processes.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AttributeLengthMismatchError,
    DuplicateEdgeError,
    EmptyGraphError,
    IndexOutOfRangeError,
    IsolatePresentError,
    NonPositiveWeightError,
    SelfLoopError,
)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with positive real edge weights.

    ``edge_u``/``edge_v`` hold 0-based endpoints with ``u < v``; each
    unordered pair appears exactly once.  ``attributes`` is an optional
    per-node numeric vector; ``labels`` preserves external node names
    assigned at ingestion (position k labels node k+1).
    """

    n: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_w: np.ndarray
    attributes: np.ndarray | None = None
    labels: tuple[str, ...] | None = None

    @property
    def m(self) -> int:
        return int(self.edge_u.shape[0])

    @cached_property
    def _arcs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Each edge as two directed arcs: (src, dst, weight)."""
        src = np.concatenate([self.edge_u, self.edge_v])
        dst = np.concatenate([self.edge_v, self.edge_u])
        w = np.concatenate([self.edge_w, self.edge_w])
        return src, dst, w

    @cached_property
    def degrees(self) -> np.ndarray:
        src, _, _ = self._arcs
        return np.bincount(src, minlength=self.n).astype(np.int64)

    @cached_property
    def weighted_degrees(self) -> np.ndarray:
        src, _, w = self._arcs
        return np.bincount(src, weights=w, minlength=self.n)

    @cached_property
    def has_integer_weights(self) -> bool:
        return bool(np.all(self.edge_w == np.floor(self.edge_w)))

    @cached_property
    def _adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR-style (indptr, neighbor, weight) with per-node sorted neighbors."""
        src, dst, w = self._arcs
        order = np.lexsort((dst, src))
        src_s, dst_s, w_s = src[order], dst[order], w[order]
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src_s, minlength=self.n), out=indptr[1:])
        return indptr, dst_s, w_s

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor ids (1-based) of node ``i`` (1-based)."""
        indptr, nbr, _ = self._adjacency
        return nbr[indptr[i - 1] : indptr[i]] + 1

    def weight(self, i: int, j: int) -> float:
        """Symmetric edge weight; 0.0 exactly when {i, j} is not an edge."""
        indptr, nbr, w = self._adjacency
        lo, hi = indptr[i - 1], indptr[i]
        pos = lo + np.searchsorted(nbr[lo:hi], j - 1)
        if pos < hi and nbr[pos] == j - 1:
            return float(w[pos])
        return 0.0

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Canonically ordered edges as (i, j, weight) with 1-based i < j."""
        order = np.lexsort((self.edge_v, self.edge_u))
        for k in order:
            yield int(self.edge_u[k]) + 1, int(self.edge_v[k]) + 1, float(self.edge_w[k])

    def label_of(self, i: int) -> str:
        return self.labels[i - 1] if self.labels is not None else str(i)

    def with_unit_weights(self) -> "Graph":
        return Graph(
            n=self.n,
            edge_u=self.edge_u,
            edge_v=self.edge_v,
            edge_w=np.ones(self.m, dtype=np.float64),
            attributes=self.attributes,
            labels=self.labels,
        )

    def with_weights(self, weights: np.ndarray) -> "Graph":
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != self.edge_w.shape:
            raise AttributeLengthMismatchError(f"expected {self.m} weights, got {w.shape[0]}")
        if not np.all(w > 0):
            k = int(np.argmin(w > 0))
            raise NonPositiveWeightError(
                f"edge ({self.edge_u[k] + 1},{self.edge_v[k] + 1}) has weight {w[k]}"
            )
        return Graph(self.n, self.edge_u, self.edge_v, w, self.attributes, self.labels)

    def with_attributes(self, attributes: Sequence[float] | None) -> "Graph":
        a = _validated_attributes(attributes, self.n)
        return Graph(self.n, self.edge_u, self.edge_v, self.edge_w, a, self.labels)


@dataclass(frozen=True)
class NodeQuantities:
    """First-order per-node vectors every gap and correlation consumes.

    degree d_i = |N(i)|; weighted_degree w_i = sum of incident edge weights;
    delta_i = sum of friends' reciprocal degrees; gamma_i = weighted sum of
    friends' reciprocal weighted degrees (sum of e_ij / w_j).  For a graph
    with no isolates, delta and gamma each sum to n.
    """

    degree: np.ndarray
    weighted_degree: np.ndarray
    delta: np.ndarray
    gamma: np.ndarray

    @property
    def n(self) -> int:
        return int(self.degree.shape[0])


class RejectReason(Enum):
    DISCONNECTED = "disconnected"
    REGULAR = "regular"
    WEIGHTED_REGULAR = "weighted_regular"


@dataclass(frozen=True)
class GraphClass:
    connected: bool
    regular: bool
    weighted_regular: bool
    has_isolates: bool
    isolate_count: int


def _validated_attributes(attributes, n: int) -> np.ndarray | None:
    if attributes is None:
        return None
    a = np.asarray(attributes, dtype=np.float64)
    if a.shape != (n,):
        raise AttributeLengthMismatchError(f"expected {n} attributes, got {a.shape}")
    return a


def build_graph(
    edge_list: Iterable[tuple[int, int, float]],
    n: int,
    attributes: Sequence[float] | None = None,
    labels: Sequence[str] | None = None,
) -> Graph:
    """Validate an edge list over nodes 1..n and construct a Graph.

    Raises DuplicateEdgeError / SelfLoopError / NonPositiveWeightError /
    IndexOutOfRangeError, naming the offending entry.
    """
    if n < 1:
        raise IndexOutOfRangeError(f"node count must be positive, got {n}")
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    seen: set[tuple[int, int]] = set()
    for entry in edge_list:
        i, j, w = entry
        if not (1 <= i <= n) or not (1 <= j <= n):
            raise IndexOutOfRangeError(f"edge ({i},{j},{w}): node id outside 1..{n}")
        if i == j:
            raise SelfLoopError(f"edge ({i},{j},{w}): self-loops are not allowed")
        if not (float(w) > 0) or not np.isfinite(w):
            raise NonPositiveWeightError(f"edge ({i},{j},{w}): weight must be a positive real")
        key = (i, j) if i < j else (j, i)
        if key in seen:
            raise DuplicateEdgeError(f"edge ({i},{j},{w}): unordered pair already present")
        seen.add(key)
        us.append(key[0] - 1)
        vs.append(key[1] - 1)
        ws.append(float(w))
    return from_arrays(
        n,
        np.asarray(us, dtype=np.int64),
        np.asarray(vs, dtype=np.int64),
        np.asarray(ws, dtype=np.float64),
        attributes=attributes,
        labels=labels,
        validated=True,
    )


def from_arrays(
    n: int,
    edge_u: np.ndarray,
    edge_v: np.ndarray,
    edge_w: np.ndarray,
    attributes: Sequence[float] | None = None,
    labels: Sequence[str] | None = None,
    validated: bool = False,
) -> Graph:
    """Array-based constructor used by generators; validation is vectorized."""
    u = np.asarray(edge_u, dtype=np.int64)
    v = np.asarray(edge_v, dtype=np.int64)
    w = np.asarray(edge_w, dtype=np.float64)
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    if not validated:
        if u.shape != v.shape or u.shape != w.shape:
            raise AttributeLengthMismatchError("edge arrays must have equal length")
        if u.size and (u.min() < 0 or v.min() < 0 or max(u.max(), v.max()) >= n):
            raise IndexOutOfRangeError("edge endpoint outside 0..n-1")
        if np.any(u == v):
            k = int(np.argmax(u == v))
            raise SelfLoopError(f"edge ({u[k] + 1},{v[k] + 1}): self-loops are not allowed")
        if not np.all(w > 0):
            k = int(np.argmin(w > 0))
            raise NonPositiveWeightError(f"edge ({u[k] + 1},{v[k] + 1}) has weight {w[k]}")
        pair_key = lo * n + hi
        if np.unique(pair_key).size != pair_key.size:
            raise DuplicateEdgeError("duplicate unordered pair in edge arrays")
    a = _validated_attributes(attributes, n)
    lbl = tuple(labels) if labels is not None else None
    if lbl is not None and len(lbl) != n:
        raise AttributeLengthMismatchError(f"expected {n} labels, got {len(lbl)}")
    return Graph(n=n, edge_u=lo, edge_v=hi, edge_w=w, attributes=a, labels=lbl)


def node_quantities(g: Graph) -> NodeQuantities:
    """Compute d, w, delta, gamma; the graph must have no isolates."""
    deg = g.degrees
    if np.any(deg == 0):
        i = int(np.argmax(deg == 0)) + 1
        raise IsolatePresentError(
            f"node {g.label_of(i)} is isolated; drop isolates before computing quantities"
        )
    wdeg = g.weighted_degrees
    src, dst, w = g._arcs
    delta = np.bincount(src, weights=1.0 / deg[dst], minlength=g.n)
    gamma = np.bincount(src, weights=w / wdeg[dst], minlength=g.n)
    return NodeQuantities(degree=deg, weighted_degree=wdeg, delta=delta, gamma=gamma)


def is_connected(g: Graph) -> bool:
    """Breadth-first reachability from node 1; a 1-node graph is connected."""
    if g.n == 1:
        return True
    if g.m == 0:
        return False
    indptr, nbr, _ = g._adjacency
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    frontier = [0]
    reached = 1
    while frontier:
        nxt: list[int] = []
        for x in frontier:
            for y in nbr[indptr[x] : indptr[x + 1]]:
                if not seen[y]:
                    seen[y] = True
                    nxt.append(int(y))
                    reached += 1
        frontier = nxt
    return reached == g.n


def classify(g: Graph) -> GraphClass:
    deg = g.degrees
    wdeg = g.weighted_degrees
    isolates = int(np.count_nonzero(deg == 0))
    return GraphClass(
        connected=is_connected(g),
        regular=bool(np.all(deg == deg[0])),
        weighted_regular=bool(np.all(wdeg == wdeg[0])),
        has_isolates=isolates > 0,
        isolate_count=isolates,
    )


def drop_isolates(g: Graph) -> tuple[Graph, int]:
    """Induce the graph on non-isolated nodes, reindexing ids densely.

    The returned graph's labels record the mapping back to the original
    nodes (original labels when present, otherwise original 1-based ids).
    """
    deg = g.degrees
    keep = deg > 0
    dropped = int(np.count_nonzero(~keep))
    if dropped == 0:
        return g, 0
    if dropped == g.n:
        raise EmptyGraphError("every node is isolated")
    new_id = np.cumsum(keep) - 1
    old_ids = np.flatnonzero(keep)
    labels = (
        tuple(g.labels[i] for i in old_ids)
        if g.labels is not None
        else tuple(str(i + 1) for i in old_ids)
    )
    attrs = g.attributes[keep] if g.attributes is not None else None
    return (
        Graph(
            n=int(keep.sum()),
            edge_u=new_id[g.edge_u],
            edge_v=new_id[g.edge_v],
            edge_w=g.edge_w,
            attributes=attrs,
            labels=labels,
        ),
        dropped,
    )
