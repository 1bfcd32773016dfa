"""Brute-force ground truth for every gap, by literal list semantics.

Each node's second-order list is materialized: friend j's attribute is
appended e_ij times (integer weights) or folded through an explicit
weighted mean (real weights).  Nothing here shares code with the closed
forms in :mod:`fpgap.metrics`; agreement between the two is a genuine
cross-check, which is the whole point of this module.  Test support and
the CLI verify command only; never use this on large graphs.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import SizeLimitExceededError
from .graph import Graph
from .metrics import GAP_NAMES

_MAX_N = 10_000
_MAX_TOTAL_LIST = 5_000_000


def _adjacency(g: Graph) -> list[list[tuple[int, float]]]:
    nbrs: list[list[tuple[int, float]]] = [[] for _ in range(g.n)]
    for u, v, w in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist()):
        nbrs[u].append((v, w))
        nbrs[v].append((u, w))
    return nbrs


def _check_size(g: Graph, weighted: bool) -> None:
    if g.n > _MAX_N:
        raise SizeLimitExceededError(f"oracle limited to n <= {_MAX_N}, got {g.n}")
    if weighted and g.has_integer_weights:
        total = 2 * float(g.edge_w.sum())
        if total > _MAX_TOTAL_LIST:
            raise SizeLimitExceededError(
                f"replicated list length {int(total)} exceeds {_MAX_TOTAL_LIST}"
            )


def _node_list(a, nbrs, weighted: bool, integer: bool) -> list[float]:
    out: list[float] = []
    for j, w in nbrs:
        reps = int(w) if (weighted and integer) else 1
        out.extend([a[j]] * reps)
    return out


def oracle_list_gap(g: Graph, a, weighted: bool) -> float:
    """Network-level gap: concatenate every node's friend-attribute list
    (friend j replicated e_ij times when weighted), mean, minus mean(a).
    Real-valued weights fall back to the weighted-mean generalization.
    """
    _check_size(g, weighted)
    a = [float(x) for x in np.asarray(a, dtype=np.float64)]
    nbrs = _adjacency(g)
    if not weighted or g.has_integer_weights:
        concat: list[float] = []
        for i in range(g.n):
            concat.extend(_node_list(a, nbrs[i], weighted, True))
        return sum(concat) / len(concat) - sum(a) / len(a)
    num = 0.0
    den = 0.0
    for i in range(g.n):
        for j, w in nbrs[i]:
            num += w * a[j]
            den += w
    return num / den - sum(a) / len(a)


def oracle_singular_gap(g: Graph, a, weighted: bool) -> float:
    """Node-level gap: each node averages its own (replicated) friend list;
    those per-node means are averaged over nodes, minus mean(a).
    """
    _check_size(g, weighted)
    a = [float(x) for x in np.asarray(a, dtype=np.float64)]
    nbrs = _adjacency(g)
    means: list[float] = []
    for i in range(g.n):
        if not weighted or g.has_integer_weights:
            lst = _node_list(a, nbrs[i], weighted, True)
            means.append(sum(lst) / len(lst))
        else:
            num = sum(w * a[j] for j, w in nbrs[i])
            den = sum(w for _, w in nbrs[i])
            means.append(num / den)
    return sum(means) / len(means) - sum(a) / len(a)


def _exact_list_gap(n: int, nbrs, reps, a: list[Fraction]) -> Fraction:
    concat: list[Fraction] = []
    for i in range(n):
        for j, w in nbrs[i]:
            concat.extend([a[j]] * reps(w))
    return Fraction(sum(concat), len(concat)) - Fraction(sum(a), n)


def _exact_singular_gap(n: int, nbrs, reps, a: list[Fraction]) -> Fraction:
    total = Fraction(0)
    for i in range(n):
        lst: list[Fraction] = []
        for j, w in nbrs[i]:
            lst.extend([a[j]] * reps(w))
        total += Fraction(sum(lst), len(lst))
    return Fraction(total, n) - Fraction(sum(a), n)


def oracle_exact(g: Graph, a=None) -> dict[str, Fraction]:
    """All eight gaps as exact rationals, via literal list replication.

    Requires integer weights and n <= 100.  Attributes default to the
    graph's own (must be exactly representable, e.g. integral); when the
    graph has none, the usual reduction applies (a := w, which is a := d
    for the unweighted versions).
    """
    if g.n > 100:
        raise SizeLimitExceededError(f"oracle_exact limited to n <= 100, got {g.n}")
    if not g.has_integer_weights:
        raise ValueError("oracle_exact requires integer edge weights")
    nbrs = _adjacency(g)
    d = [Fraction(int(x)) for x in g.degrees]
    w = [Fraction(int(x)) for x in g.weighted_degrees]
    if a is not None:
        attrs = [Fraction(x) for x in a]
    elif g.attributes is not None:
        attrs = [Fraction(x) for x in g.attributes]
    else:
        attrs = None
    once = lambda _w: 1
    replicated = lambda _w: int(_w)
    a_unweighted = attrs if attrs is not None else d
    a_weighted = attrs if attrs is not None else w
    values = {
        "lfp": _exact_list_gap(g.n, nbrs, once, d),
        "sfp": _exact_singular_gap(g.n, nbrs, once, d),
        "lwfp": _exact_list_gap(g.n, nbrs, replicated, w),
        "swfp": _exact_singular_gap(g.n, nbrs, replicated, w),
        "lafp": _exact_list_gap(g.n, nbrs, once, a_unweighted),
        "safp": _exact_singular_gap(g.n, nbrs, once, a_unweighted),
        "lwafp": _exact_list_gap(g.n, nbrs, replicated, a_weighted),
        "swafp": _exact_singular_gap(g.n, nbrs, replicated, a_weighted),
    }
    assert set(values) == set(GAP_NAMES)
    return values
