"""Pydantic request/response models for the HTTP service.

The report schema is frozen for downstream consumers: graph
{n, m, connected, regular, weighted_regular}; gaps keyed lfp/sfp/lwfp/
swfp/lafp/safp/lwafp/swafp, each {value, verdict, zero}; correlations
keyed d_a/delta_a/w_a/gamma_a/d_delta/w_gamma/d_w, each
{value | "undefined", prediction}; consistency {ok, details}.
"""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..correlations import Correlation, CorrelationReport, ConsistencyReport, Prediction
from ..graph import GraphClass
from ..metrics import GAP_NAMES, GapReport
from ..simulation import SimulationSummary


class GapEntry(BaseModel):
    value: float
    verdict: Literal["holds", "fails"]
    zero: bool


class GapsModel(BaseModel):
    lfp: GapEntry
    sfp: GapEntry
    lwfp: GapEntry
    swfp: GapEntry
    lafp: GapEntry
    safp: GapEntry
    lwafp: GapEntry
    swafp: GapEntry


class CorrelationEntry(BaseModel):
    value: float | Literal["undefined"]
    prediction: Literal["holds", "fails", "zero_gap"] | None = None


class CorrelationsModel(BaseModel):
    d_a: CorrelationEntry
    delta_a: CorrelationEntry
    w_a: CorrelationEntry
    gamma_a: CorrelationEntry
    d_delta: CorrelationEntry
    w_gamma: CorrelationEntry
    d_w: CorrelationEntry


class GraphInfo(BaseModel):
    n: int
    m: int
    connected: bool
    regular: bool
    weighted_regular: bool


class ConsistencyDetail(BaseModel):
    gap: str
    consistent: bool
    gap_sign: int
    correlation_sign: int | None


class ConsistencyModel(BaseModel):
    ok: bool
    details: list[ConsistencyDetail]


class ReportModel(BaseModel):
    graph: GraphInfo
    gaps: GapsModel
    correlations: CorrelationsModel
    consistency: ConsistencyModel


class AnalyzeRequest(BaseModel):
    edge_text: str | None = None
    edges: list[tuple[str, str, float]] | None = None
    metadata_text: str | None = None
    attr_column: str | None = None
    attributes: dict[str, float] | None = None
    strict_connected: bool = False
    lenient: bool = False
    missing_token: str | None = None

    @model_validator(mode="after")
    def _one_edge_source(self):
        if (self.edge_text is None) == (self.edges is None):
            raise ValueError("provide exactly one of edge_text or edges")
        return self


class AnalyzeResponse(BaseModel):
    report: ReportModel
    attribute_source: Literal["column", "explicit", "reduction"]
    dropped_isolates: int
    dropped_duplicate_edges: int
    dropped_self_loops: int


class SimulateRequest(BaseModel):
    n: int = 300
    p: float = 0.02
    runs: int = 200
    conditions: list[int] = Field(default_factory=lambda: list(range(-5, 6)))
    weight_max: int = 10
    seed: int = 0
    workers: int | None = None


class ConditionStatsModel(BaseModel):
    condition: int
    runs: int
    failures: dict[str, int]
    failure_proportions: dict[str, float]
    corr_mean: dict[str, float | None]
    corr_sd: dict[str, float | None]
    undefined_corrs: dict[str, int]
    zero_gaps: int
    sign_violations: int


class TopologyStatModel(BaseModel):
    mean: float | None
    sd: float | None
    defined: int
    undefined: int


class SummaryModel(BaseModel):
    runs: int
    n: int
    p: float
    weight_max: int
    seed: int
    conditions: list[ConditionStatsModel]
    base_gap_failures: dict[str, int]
    discarded_graphs: int
    sign_violations_total: int
    topology: dict[str, TopologyStatModel]


class SimulateResponse(BaseModel):
    summary: SummaryModel
    conditions_csv: str
    scatter_csv: str


class PipelineNetwork(BaseModel):
    network_id: str | None = None
    edge_text: str
    metadata_text: str


class PipelineRequest(BaseModel):
    networks: list[PipelineNetwork]
    gender_column: str
    year_column: str
    config_model: bool = False
    seed: int = 0
    lenient: bool = False
    missing_token: str | None = None


class NetworkReportModel(BaseModel):
    network_id: str
    p2: float
    attribute_mean: float
    report: ReportModel
    rewired_report: ReportModel | None = None
    rewired_p2: float | None = None


class ScatterRowModel(BaseModel):
    network_id: str
    paradox: str
    correlation: float | None
    gap: float


class ScatterModel(BaseModel):
    rows: list[ScatterRowModel]
    across: dict[str, float | None]


class ComparisonPairModel(BaseModel):
    network_id: str
    metric: str
    original: float | None
    rewired: float | None


class ComparisonModel(BaseModel):
    pairs: list[ComparisonPairModel]
    slopes: dict[str, float | None]


class PipelineResponse(BaseModel):
    networks: list[NetworkReportModel]
    scatter: ScatterModel
    comparison: ComparisonModel | None = None


class VerifyRequest(BaseModel):
    graphs: int = 100
    max_n: int = 30
    seed: int = 0
    inject_fault: bool = False


class PropertyModel(BaseModel):
    name: str
    checked: int
    passed: bool
    violations: list[str]


class VerifyResponse(BaseModel):
    ok: bool
    graphs: int
    max_n: int
    seed: int
    properties: list[PropertyModel]


def gaps_model(gaps: GapReport) -> GapsModel:
    entries = {
        name: GapEntry(
            value=gaps.value(name),
            verdict=gaps.verdicts[name].value,
            zero=gaps.zero_flags[name],
        )
        for name in GAP_NAMES
    }
    return GapsModel(**entries)


def _corr_entry(c: Correlation, prediction: Prediction | None) -> CorrelationEntry:
    return CorrelationEntry(
        value=c.value if c.defined else "undefined",
        prediction=prediction.value if prediction is not None else None,
    )


def correlations_model(corrs: CorrelationReport) -> CorrelationsModel:
    p = corrs.predictions
    return CorrelationsModel(
        d_a=_corr_entry(corrs.r_da, p["lafp"]),
        delta_a=_corr_entry(corrs.r_delta_a, p["safp"]),
        w_a=_corr_entry(corrs.r_wa, p["lwafp"]),
        gamma_a=_corr_entry(corrs.r_gamma_a, p["swafp"]),
        d_delta=_corr_entry(corrs.r_d_delta, None),
        w_gamma=_corr_entry(corrs.r_w_gamma, None),
        d_w=_corr_entry(corrs.r_dw, None),
    )


def consistency_model(cons: ConsistencyReport) -> ConsistencyModel:
    return ConsistencyModel(
        ok=cons.ok,
        details=[
            ConsistencyDetail(
                gap=e.gap_name,
                consistent=e.consistent,
                gap_sign=e.gap_sign,
                correlation_sign=e.correlation_sign,
            )
            for e in cons.entries
        ],
    )


def graph_info(n: int, m: int, cls: GraphClass) -> GraphInfo:
    return GraphInfo(
        n=n,
        m=m,
        connected=cls.connected,
        regular=cls.regular,
        weighted_regular=cls.weighted_regular,
    )


def summary_model(summary: SimulationSummary, n: int, p: float, weight_max: int,
                  seed: int) -> SummaryModel:
    return SummaryModel(
        runs=summary.runs,
        n=n,
        p=p,
        weight_max=weight_max,
        seed=seed,
        conditions=[
            ConditionStatsModel(
                condition=c.j,
                runs=c.runs,
                failures=c.failures,
                failure_proportions=c.failure_proportions,
                corr_mean=c.corr_mean,
                corr_sd=c.corr_sd,
                undefined_corrs=c.undefined_corrs,
                zero_gaps=c.zero_gaps,
                sign_violations=c.sign_violations,
            )
            for c in summary.conditions
        ],
        base_gap_failures=summary.base_gap_failures,
        discarded_graphs=summary.discarded_graphs,
        sign_violations_total=summary.sign_violations_total,
        topology={
            key: TopologyStatModel(
                mean=stat.mean, sd=stat.sd, defined=stat.defined, undefined=stat.undefined
            )
            for key, stat in summary.topology.items()
        },
    )
