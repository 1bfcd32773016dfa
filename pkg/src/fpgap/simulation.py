"""Condition sweeps and original-vs-rewired comparisons.

A sweep run generates an accepted weighted G(n,p) graph, draws one base
standard-normal attribute sequence, then for each condition j derives
a = z + (j/100) d and records the four attribute gaps, their associated
correlations, verdicts, and the sign-consistency self-check.  Results are
deterministic given the master seed regardless of worker count: every run
owns an RNG substream keyed by (master_seed, run_index) and aggregation
is order-independent.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .correlations import (
    ATTR_GAP_NAMES,
    Correlation,
    CorrelationReport,
    check_sign_consistency,
    pearson,
    sign_rule_report,
)
from .errors import ConsistencyViolationError, LengthMismatchError
from .generators import (
    ConditionSpec,
    GnpSpec,
    child_seed,
    derive_seed,
    generate_accepted_gnp,
    synthesize_attributes,
)
from .graph import node_quantities
from .metrics import GapReport, Verdict, full_report

BASE_GAP_NAMES = ("lfp", "sfp", "lwfp", "swfp")
CORR_NAMES = ("r_da", "r_delta_a", "r_wa", "r_gamma_a")
TOPOLOGY_NAMES = ("d_delta", "w_gamma", "d_w")

_GRAPH_STREAM, _ATTR_STREAM = 0, 1


@dataclass(frozen=True)
class SweepSpec:
    """Sweep parameters; the dataclass defaults are the full-scale reference setup."""

    runs: int = 1000
    graph: GnpSpec = GnpSpec(n=1000, p=0.02, weight_max=10)
    conditions: tuple[int, ...] = tuple(range(-100, 101))
    master_seed: int = 0

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be positive")
        for j in self.conditions:
            ConditionSpec(j)


@dataclass(frozen=True)
class ScatterRow:
    condition: int
    run: int
    paradox: str
    correlation: float | None
    gap: float


@dataclass(frozen=True)
class ConditionStats:
    j: int
    runs: int
    failures: dict[str, int]
    failure_proportions: dict[str, float]
    corr_mean: dict[str, float | None]
    corr_sd: dict[str, float | None]
    undefined_corrs: dict[str, int]
    zero_gaps: int
    sign_violations: int


@dataclass(frozen=True)
class TopologyStat:
    mean: float | None
    sd: float | None
    defined: int
    undefined: int


@dataclass(frozen=True)
class SimulationSummary:
    runs: int
    conditions: tuple[ConditionStats, ...]
    base_gap_failures: dict[str, int]
    discarded_graphs: int
    sign_violations_total: int
    topology: dict[str, TopologyStat]
    scatter: tuple[ScatterRow, ...]


@dataclass(frozen=True)
class _RunRecord:
    run_index: int
    discarded: int
    base_fails: dict[str, bool]
    topo: dict[str, float | None]
    # per condition j: (gaps, corr values, fails, zeros, consistent)
    per_condition: dict[int, tuple[dict, dict, dict, dict, bool]]


def _corr_value(c: Correlation) -> float | None:
    return c.value if c.defined else None


def _run_one(spec: SweepSpec, run_index: int) -> _RunRecord:
    gspec = GnpSpec(
        spec.graph.n,
        spec.graph.p,
        spec.graph.weight_max,
        seed=derive_seed(spec.master_seed, run_index, _GRAPH_STREAM),
    )
    g, discarded = generate_accepted_gnp(gspec)
    q = node_quantities(g)
    attr_seed = child_seed(spec.master_seed, run_index, _ATTR_STREAM)

    base_report = full_report(g)
    base_fails = {k: base_report.verdicts[k] is Verdict.FAILS for k in BASE_GAP_NAMES}
    topo_report = sign_rule_report(q)
    topo = {
        "d_delta": _corr_value(topo_report.r_d_delta),
        "w_gamma": _corr_value(topo_report.r_w_gamma),
        "d_w": _corr_value(topo_report.r_dw),
    }

    per_condition = {}
    for j in spec.conditions:
        a = synthesize_attributes(q, ConditionSpec(j), attr_seed)
        report = full_report(g.with_attributes(a))
        corrs = sign_rule_report(q, a)
        consistency = check_sign_consistency(report, corrs)
        gaps = {k: report.value(k) for k in ATTR_GAP_NAMES}
        corr_values = {
            "r_da": _corr_value(corrs.r_da),
            "r_delta_a": _corr_value(corrs.r_delta_a),
            "r_wa": _corr_value(corrs.r_wa),
            "r_gamma_a": _corr_value(corrs.r_gamma_a),
        }
        fails = {k: report.verdicts[k] is Verdict.FAILS for k in ATTR_GAP_NAMES}
        zeros = {k: report.zero_flags[k] for k in ATTR_GAP_NAMES}
        per_condition[j] = (gaps, corr_values, fails, zeros, consistency.ok)
    return _RunRecord(run_index, discarded, base_fails, topo, per_condition)


def _summarize(values: list[float]) -> tuple[float | None, float | None]:
    if not values:
        return None, None
    mean = float(np.mean(values))
    sd = float(np.std(values, ddof=1)) if len(values) > 1 else None
    return mean, sd


_CORR_FOR_GAP = dict(zip(ATTR_GAP_NAMES, CORR_NAMES))


def run_sweep(
    spec: SweepSpec, workers: int | None = None, raise_on_violation: bool = True
) -> SimulationSummary:
    """Execute the sweep and aggregate per-condition statistics.

    A sign-rule violation (gap sign disagreeing with its associated
    correlation) aborts with diagnostics unless raise_on_violation is
    False, in which case it is only counted.
    """
    env_cap = os.environ.get("PARADOX_THREADS")
    if workers is None:
        workers = int(env_cap) if env_cap else 1
    elif env_cap:
        workers = min(workers, int(env_cap))
    indices = list(range(spec.runs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, [spec] * spec.runs, indices, chunksize=8))
    else:
        records = [_run_one(spec, i) for i in indices]
    records.sort(key=lambda r: r.run_index)

    base_gap_failures = {k: 0 for k in BASE_GAP_NAMES}
    for rec in records:
        for k in BASE_GAP_NAMES:
            base_gap_failures[k] += int(rec.base_fails[k])

    condition_stats = []
    scatter: list[ScatterRow] = []
    violations_total = 0
    for j in spec.conditions:
        failures = {k: 0 for k in ATTR_GAP_NAMES}
        corr_lists: dict[str, list[float]] = {k: [] for k in CORR_NAMES}
        undefined = {k: 0 for k in CORR_NAMES}
        zero_gaps = 0
        violations = 0
        for rec in records:
            gaps, corr_values, fails, zeros, consistent = rec.per_condition[j]
            for k in ATTR_GAP_NAMES:
                failures[k] += int(fails[k])
                scatter.append(
                    ScatterRow(j, rec.run_index, k, corr_values[_CORR_FOR_GAP[k]], gaps[k])
                )
            for k in CORR_NAMES:
                if corr_values[k] is None:
                    undefined[k] += 1
                else:
                    corr_lists[k].append(corr_values[k])
            zero_gaps += int(any(zeros.values()))
            if not consistent:
                violations += 1
                if raise_on_violation:
                    raise ConsistencyViolationError(
                        f"sign rule violated at condition {j}, run {rec.run_index}: "
                        f"gaps={gaps} correlations={corr_values}"
                    )
        violations_total += violations
        corr_mean = {}
        corr_sd = {}
        for k in CORR_NAMES:
            mean, sd = _summarize(corr_lists[k])
            corr_mean[k] = mean
            corr_sd[k] = sd
        condition_stats.append(
            ConditionStats(
                j=j,
                runs=spec.runs,
                failures=failures,
                failure_proportions={k: failures[k] / spec.runs for k in ATTR_GAP_NAMES},
                corr_mean=corr_mean,
                corr_sd=corr_sd,
                undefined_corrs=undefined,
                zero_gaps=zero_gaps,
                sign_violations=violations,
            )
        )

    topology = {}
    for key in TOPOLOGY_NAMES:
        defined = [rec.topo[key] for rec in records if rec.topo[key] is not None]
        mean, sd = _summarize(defined)
        topology[key] = TopologyStat(
            mean=mean, sd=sd, defined=len(defined), undefined=len(records) - len(defined)
        )

    return SimulationSummary(
        runs=spec.runs,
        conditions=tuple(condition_stats),
        base_gap_failures=base_gap_failures,
        discarded_graphs=sum(rec.discarded for rec in records),
        sign_violations_total=violations_total,
        topology=topology,
        scatter=tuple(scatter),
    )


@dataclass(frozen=True)
class ScatterTable:
    rows: tuple[tuple[str, str, float | None, float], ...]
    across: dict[str, Correlation]


def scatter_table(
    analyzed: Sequence[tuple[GapReport, CorrelationReport]],
    network_ids: Sequence[str] | None = None,
) -> ScatterTable:
    """Rows of (network_id, paradox, correlation, gap) plus, per paradox,
    the across-network correlation between correlation and gap values.
    """
    ids = (
        [str(i) for i in network_ids]
        if network_ids is not None
        else [str(i) for i in range(len(analyzed))]
    )
    if len(ids) != len(analyzed):
        raise LengthMismatchError("network_ids must match analyzed list")
    rows = []
    across = {}
    for paradox in ATTR_GAP_NAMES:
        xs: list[float] = []
        ys: list[float] = []
        for net_id, (gaps, corrs) in zip(ids, analyzed):
            c = corrs.for_gap(paradox)
            gap_value = gaps.value(paradox)
            rows.append((net_id, paradox, _corr_value(c), gap_value))
            if c.defined:
                xs.append(c.value)
                ys.append(gap_value)
        across[paradox] = pearson(xs, ys) if xs else Correlation(None, None)
    return ScatterTable(rows=tuple(rows), across=across)


def topology_correlation_stats(reports: Sequence[CorrelationReport]) -> dict[str, TopologyStat]:
    """Mean/s.d. of the topology correlations across graphs; undefined
    entries are excluded and counted.
    """
    out = {}
    for key, pick in (
        ("d_delta", lambda r: r.r_d_delta),
        ("w_gamma", lambda r: r.r_w_gamma),
        ("d_w", lambda r: r.r_dw),
    ):
        defined = [pick(r).value for r in reports if pick(r).defined]
        mean, sd = _summarize(defined)
        out[key] = TopologyStat(
            mean=mean, sd=sd, defined=len(defined), undefined=len(reports) - len(defined)
        )
    return out


COMPARE_METRICS = (
    ["gap_" + k for k in ("lfp", "sfp", "lwfp", "swfp", "lafp", "safp", "lwafp", "swafp")]
    + list(CORR_NAMES)
    + ["r_d_delta", "r_w_gamma", "r_dw"]
)


@dataclass(frozen=True)
class ComparisonTable:
    # rows: (network_id, metric, original value, rewired value)
    pairs: tuple[tuple[str, str, float | None, float | None], ...]
    slopes: dict[str, float | None]


def _metric_value(gaps: GapReport, corrs: CorrelationReport, metric: str) -> float | None:
    if metric.startswith("gap_"):
        return gaps.value(metric[4:])
    return _corr_value(getattr(corrs, metric))


def compare_original_vs_config(
    original: Sequence[tuple[GapReport, CorrelationReport]],
    rewired: Sequence[tuple[GapReport, CorrelationReport]],
    network_ids: Sequence[str] | None = None,
) -> ComparisonTable:
    """Pair every gap/correlation before and after rewiring and fit a
    least-squares slope per metric through the (original, rewired) points.
    """
    if len(original) != len(rewired):
        raise LengthMismatchError(
            f"original has {len(original)} networks, rewired has {len(rewired)}"
        )
    ids = (
        [str(i) for i in network_ids]
        if network_ids is not None
        else [str(i) for i in range(len(original))]
    )
    pairs = []
    slopes = {}
    for metric in COMPARE_METRICS:
        xs: list[float] = []
        ys: list[float] = []
        for net_id, (og, oc), (rg, rc) in zip(ids, original, rewired):
            x = _metric_value(og, oc, metric)
            y = _metric_value(rg, rc, metric)
            pairs.append((net_id, metric, x, y))
            if x is not None and y is not None:
                xs.append(x)
                ys.append(y)
        slopes[metric] = _ols_slope(xs, ys)
    return ComparisonTable(pairs=tuple(pairs), slopes=slopes)


def _ols_slope(xs: list[float], ys: list[float]) -> float | None:
    if len(xs) < 2:
        return None
    x = np.asarray(xs)
    y = np.asarray(ys)
    dx = x - x.mean()
    den = float(dx @ dx)
    if den == 0.0:
        return None
    return float(dx @ (y - y.mean())) / den
