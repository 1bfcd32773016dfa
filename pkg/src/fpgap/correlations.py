"""Pearson correlations, the four sign-rule correlations, and consistency checks.

The sign rules: whenever the correlation is defined, the sign of each
attribute-based gap equals the sign of its associated correlation
(d-a for the list attribute gap, delta-a for the singular attribute gap,
w-a for the list weighted-attribute gap, gamma-a for the singular one).
When the correlation is undefined (a constant sequence on either side)
the gap is provably zero, so an undefined correlation predicts Holds.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import LengthMismatchError
from .graph import NodeQuantities
from .metrics import GapReport

EPS_CORR = 1e-12

ATTR_GAP_NAMES = ("lafp", "safp", "lwafp", "swafp")


class UndefinedReason(Enum):
    CONSTANT_FIRST = "constant_first"
    CONSTANT_SECOND = "constant_second"
    BOTH = "both"


class Prediction(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    ZERO_GAP = "zero_gap"


@dataclass(frozen=True)
class Correlation:
    """A Pearson correlation value, or Undefined with the reason."""

    value: float | None
    reason_undefined: UndefinedReason | None = None

    @property
    def defined(self) -> bool:
        return self.value is not None

    def sign(self, eps: float = EPS_CORR) -> int | None:
        """-1/0/+1 with |value| <= eps treated as zero; None when undefined."""
        if self.value is None:
            return None
        if abs(self.value) <= eps:
            return 0
        return 1 if self.value > 0 else -1


@dataclass(frozen=True)
class CorrelationReport:
    r_da: Correlation
    r_delta_a: Correlation
    r_wa: Correlation
    r_gamma_a: Correlation
    r_d_delta: Correlation
    r_w_gamma: Correlation
    r_dw: Correlation
    predictions: dict[str, Prediction]

    def for_gap(self, gap_name: str) -> Correlation:
        return {
            "lafp": self.r_da,
            "safp": self.r_delta_a,
            "lwafp": self.r_wa,
            "swafp": self.r_gamma_a,
        }[gap_name]


@dataclass(frozen=True)
class ConsistencyEntry:
    gap_name: str
    consistent: bool
    gap_sign: int
    correlation_sign: int | None


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    entries: tuple[ConsistencyEntry, ...]


def pearson(x, y) -> Correlation:
    """Two-pass Pearson correlation; Undefined when either side is constant.

    Constantness is decided by exact elementwise equality, not by a
    variance threshold, so a constant float sequence can never leak
    rounding noise into a spurious correlation.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatchError(f"shapes differ: {x.shape} vs {y.shape}")
    const_x = x.size < 2 or bool(np.all(x == x[0]))
    const_y = y.size < 2 or bool(np.all(y == y[0]))
    if const_x and const_y:
        return Correlation(None, UndefinedReason.BOTH)
    if const_x:
        return Correlation(None, UndefinedReason.CONSTANT_FIRST)
    if const_y:
        return Correlation(None, UndefinedReason.CONSTANT_SECOND)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    # Sums of squares can underflow to zero for near-constant input; that
    # is numerically zero variance and therefore undefined as well.
    if sxx == 0.0 and syy == 0.0:
        return Correlation(None, UndefinedReason.BOTH)
    if sxx == 0.0:
        return Correlation(None, UndefinedReason.CONSTANT_FIRST)
    if syy == 0.0:
        return Correlation(None, UndefinedReason.CONSTANT_SECOND)
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return Correlation(min(1.0, max(-1.0, r)))


def _predict(c: Correlation, eps: float = EPS_CORR) -> Prediction:
    if not c.defined:
        return Prediction.HOLDS
    s = c.sign(eps)
    if s == 0:
        return Prediction.ZERO_GAP
    return Prediction.FAILS if s < 0 else Prediction.HOLDS


def sign_rule_report(q: NodeQuantities, a=None) -> CorrelationReport:
    """The four sign-rule correlations plus the topology correlations.

    With no attribute vector the reduction applies: the weighted pair
    correlates against w, the unweighted pair against d (so the values
    become r_dd, r_delta_d, r_ww, r_gamma_w, matching the gaps the
    attribute versions reduce to).
    """
    d = q.degree.astype(np.float64)
    w = q.weighted_degree
    if a is None:
        attr_unweighted, attr_weighted = d, w
    else:
        a = np.asarray(a, dtype=np.float64)
        attr_unweighted = attr_weighted = a
    r_da = pearson(d, attr_unweighted)
    r_delta_a = pearson(q.delta, attr_unweighted)
    r_wa = pearson(w, attr_weighted)
    r_gamma_a = pearson(q.gamma, attr_weighted)
    predictions = {
        "lafp": _predict(r_da),
        "safp": _predict(r_delta_a),
        "lwafp": _predict(r_wa),
        "swafp": _predict(r_gamma_a),
    }
    return CorrelationReport(
        r_da=r_da,
        r_delta_a=r_delta_a,
        r_wa=r_wa,
        r_gamma_a=r_gamma_a,
        r_d_delta=pearson(d, q.delta),
        r_w_gamma=pearson(w, q.gamma),
        r_dw=pearson(d, w),
        predictions=predictions,
    )


def check_sign_consistency(gaps: GapReport, corrs: CorrelationReport) -> ConsistencyReport:
    """Runtime self-check of the sign theorems on one graph's results.

    An undefined correlation requires the gap to be (numerically) zero;
    a defined one requires matching signs, with near-zero values on
    either side treated as zero.
    """
    entries = []
    for name in ATTR_GAP_NAMES:
        corr = corrs.for_gap(name)
        gap_sign = 0 if gaps.zero_flags[name] else (1 if gaps.value(name) > 0 else -1)
        corr_sign = corr.sign()
        if not corr.defined:
            consistent = gaps.zero_flags[name]
        else:
            consistent = gap_sign == corr_sign
        entries.append(
            ConsistencyEntry(
                gap_name=name,
                consistent=consistent,
                gap_sign=gap_sign,
                correlation_sign=corr_sign,
            )
        )
    return ConsistencyReport(ok=all(e.consistent for e in entries), entries=tuple(entries))
