"""The eight gap values and their hold/fail verdicts.

Each gap is the mean of a second-order quantity minus the mean of the
matching first-order quantity; a paradox fails exactly when its gap is
negative.  The canonical implementations are the closed forms:

    list gaps      (n * sum(fo*a) - sum(fo) * sum(a)) / (n * sum(fo))
    singular gaps  (sum(coeff*a) - sum(a)) / n

where the first-order vector ``fo`` is d or w and the singular
coefficient vector is delta or gamma.  The brute-force list-semantics
implementations live in :mod:`fpgap.oracle` and are deliberately not
shared with this module.

Arithmetic is exact (Python integers / fractions) whenever that is cheap:
list gaps over integral inputs use integer arithmetic, and singular gaps
on small integer-weight graphs use rational arithmetic.  Reported floats
are then correctly rounded, which is what lets golden-fixture tests
compare against exact rationals with zero tolerance.  Everything else
runs through float64.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import AttributeLengthMismatchError
from .graph import Graph, NodeQuantities, node_quantities

EPS_ZERO = 1e-9

GAP_NAMES = ("lfp", "sfp", "lwfp", "swfp", "lafp", "safp", "lwafp", "swafp")

# Bounds under which the exact singular-gap path (fractions) stays cheap.
_EXACT_MAX_N = 64
_EXACT_MAX_WDEG = 1000.0

# Bounds under which integer sums for list gaps cannot overflow int64.
_INT_MAX_N = 100_000
_INT_MAX_VALUE = 1.0e6


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"


@dataclass(frozen=True)
class GapReport:
    """All eight gaps for one graph, with per-gap verdicts and zero flags.

    ``zero_flags[name]`` is True when |gap| is within the zero threshold
    (1e-9 scaled by the mean absolute first-order value); the verdict is
    FAILS only when the gap is below minus that threshold.
    """

    g_lfp: float
    g_sfp: float
    g_lwfp: float
    g_swfp: float
    g_lafp: float
    g_safp: float
    g_lwafp: float
    g_swafp: float
    verdicts: dict[str, Verdict]
    zero_flags: dict[str, bool]

    def value(self, name: str) -> float:
        return float(getattr(self, f"g_{name}"))

    def values(self) -> dict[str, float]:
        return {name: self.value(name) for name in GAP_NAMES}


def _as_integral(x: np.ndarray, limit: float = _INT_MAX_VALUE) -> np.ndarray | None:
    """Return x as int64 when every entry is an exact small integer, else None."""
    if not np.all(np.isfinite(x)) or np.any(np.abs(x) > limit):
        return None
    xi = x.astype(np.int64)
    if not np.array_equal(xi.astype(np.float64), x):
        return None
    return xi


def _exact_capable(g: Graph) -> bool:
    if g.n > _EXACT_MAX_N or g.m == 0 or not g.has_integer_weights:
        return False
    return float(g.weighted_degrees.max()) <= _EXACT_MAX_WDEG


def _exact_delta_gamma(g: Graph) -> tuple[list[Fraction], list[Fraction]]:
    deg = g.degrees.tolist()
    wdeg = [int(x) for x in g.weighted_degrees]
    delta = [Fraction(0)] * g.n
    gamma = [Fraction(0)] * g.n
    src, dst, w = g._arcs
    for s, t, wt in zip(src.tolist(), dst.tolist(), w.tolist()):
        delta[s] += Fraction(1, deg[t])
        gamma[s] += Fraction(int(wt), wdeg[t])
    return delta, gamma


def _list_gap(fo: np.ndarray, a: np.ndarray) -> float:
    """(n*sum(fo*a) - sum(fo)*sum(a)) / (n*sum(fo)), exact for integral input."""
    n = fo.shape[0]
    fo_i = _as_integral(fo)
    a_i = _as_integral(a)
    if fo_i is not None and a_i is not None and n <= _INT_MAX_N:
        s_fo = int(fo_i.sum())
        s_a = int(a_i.sum())
        s_prod = int(np.sum(fo_i * a_i))
        return (n * s_prod - s_fo * s_a) / (n * s_fo)
    s_fo = float(fo.sum())
    return (n * float(fo @ a) - s_fo * float(a.sum())) / (n * s_fo)


def _singular_gap(coeff: np.ndarray, a: np.ndarray) -> float:
    """(sum(coeff*a) - sum(a)) / n in float64."""
    n = coeff.shape[0]
    return (float(coeff @ a) - float(a.sum())) / n


def _singular_gap_exact(coeff: list[Fraction], a: np.ndarray) -> float:
    n = len(coeff)
    a_int = [int(x) for x in a]
    total = sum(c * ai for c, ai in zip(coeff, a_int)) - sum(a_int)
    return float(Fraction(total, n))


def _singular_attr_gap(g: Graph, coeff_float: np.ndarray, a: np.ndarray, which: str) -> float:
    if _exact_capable(g) and _as_integral(a) is not None:
        delta, gamma = _exact_delta_gamma(g)
        return _singular_gap_exact(delta if which == "delta" else gamma, a)
    return _singular_gap(coeff_float, a)


def _check_attributes(a, n: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.shape != (n,):
        raise AttributeLengthMismatchError(f"expected {n} attributes, got {a.shape}")
    return a


def gap_lfp(q: NodeQuantities) -> float:
    """List friendship-paradox gap: sum(d^2)/sum(d) - mean(d)."""
    d = q.degree
    n = q.n
    s = int(d.sum())
    s2 = int(np.sum(d * d))
    return (n * s2 - s * s) / (n * s)


def gap_sfp(g: Graph, q: NodeQuantities) -> float:
    """Singular friendship-paradox gap via the edge-sum form:
    (1/n) * sum over edges of (d_x/d_y + d_y/d_x) - mean(d).
    """
    d = q.degree
    n = q.n
    if _exact_capable(g):
        dl = d.tolist()
        acc = Fraction(0)
        for x, y in zip(g.edge_u.tolist(), g.edge_v.tolist()):
            acc += Fraction(dl[x], dl[y]) + Fraction(dl[y], dl[x])
        return float(Fraction(acc, n) - Fraction(int(d.sum()), n))
    du = d[g.edge_u].astype(np.float64)
    dv = d[g.edge_v].astype(np.float64)
    return (float(np.sum(du / dv + dv / du)) - float(d.sum())) / n


def gap_lwfp(q: NodeQuantities, g: Graph) -> float:
    """List weighted gap: sum(w^2)/sum(w) - mean(w)."""
    return _list_gap(q.weighted_degree, q.weighted_degree)


def gap_swfp(g: Graph, q: NodeQuantities) -> float:
    """Singular weighted gap: (1/n) * sum(gamma_i * w_i) - mean(w)."""
    return _singular_attr_gap(g, q.gamma, q.weighted_degree, "gamma")


def gap_lefp(g: Graph, q: NodeQuantities, a) -> float:
    """List extended gap: (sum(w_i a_i) - mean(a) sum(w)) / sum(w).

    With a := w this equals gap_lwfp; on a unit-weight graph it is the
    list attribute gap.
    """
    a = _check_attributes(a, q.n)
    return _list_gap(q.weighted_degree, a)


def gap_sefp(g: Graph, q: NodeQuantities, a) -> float:
    """Singular extended gap: (1/n) * sum(gamma_i a_i) - mean(a)."""
    a = _check_attributes(a, q.n)
    return _singular_attr_gap(g, q.gamma, a, "gamma")


def _scaled_eps(values: np.ndarray, eps: float) -> float:
    scale = float(np.mean(np.abs(values)))
    return eps * scale if scale > 0 else eps


def full_report(g: Graph, eps_zero: float = EPS_ZERO) -> GapReport:
    """Compute all eight gaps for one graph (isolates already dropped).

    Attribute versions use g.attributes when set, otherwise the attribute
    reduces to the first-order vector itself (a := w, which is a := d for
    the unweighted pair), making the attribute gaps coincide with the
    plain gaps exactly.  Unweighted versions run on a unit-weight copy.
    """
    q = node_quantities(g)
    g_lfp = gap_lfp(q)
    g_sfp = gap_sfp(g, q)
    g_lwfp = gap_lwfp(q, g)
    g_swfp = gap_swfp(g, q)

    a = g.attributes
    if a is None:
        g_lafp, g_safp = g_lfp, g_sfp
        g_lwafp, g_swafp = g_lwfp, g_swfp
        attr_unweighted = q.degree.astype(np.float64)
        attr_weighted = q.weighted_degree
    else:
        unit = g.with_unit_weights()
        q_unit = node_quantities(unit)
        g_lafp = gap_lefp(unit, q_unit, a)
        g_safp = gap_sefp(unit, q_unit, a)
        g_lwafp = gap_lefp(g, q, a)
        g_swafp = gap_sefp(g, q, a)
        attr_unweighted = a
        attr_weighted = a

    values = {
        "lfp": g_lfp,
        "sfp": g_sfp,
        "lwfp": g_lwfp,
        "swfp": g_swfp,
        "lafp": g_lafp,
        "safp": g_safp,
        "lwafp": g_lwafp,
        "swafp": g_swafp,
    }
    scales = {
        "lfp": _scaled_eps(q.degree.astype(np.float64), eps_zero),
        "sfp": _scaled_eps(q.degree.astype(np.float64), eps_zero),
        "lwfp": _scaled_eps(q.weighted_degree, eps_zero),
        "swfp": _scaled_eps(q.weighted_degree, eps_zero),
        "lafp": _scaled_eps(attr_unweighted, eps_zero),
        "safp": _scaled_eps(attr_unweighted, eps_zero),
        "lwafp": _scaled_eps(attr_weighted, eps_zero),
        "swafp": _scaled_eps(attr_weighted, eps_zero),
    }
    verdicts = {
        name: Verdict.FAILS if values[name] < -scales[name] else Verdict.HOLDS
        for name in GAP_NAMES
    }
    zero_flags = {name: abs(values[name]) <= scales[name] for name in GAP_NAMES}
    return GapReport(
        g_lfp=g_lfp,
        g_sfp=g_sfp,
        g_lwfp=g_lwfp,
        g_swfp=g_swfp,
        g_lafp=g_lafp,
        g_safp=g_safp,
        g_lwafp=g_lwafp,
        g_swafp=g_swafp,
        verdicts=verdicts,
        zero_flags=zero_flags,
    )
