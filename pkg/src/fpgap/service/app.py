"""FastAPI service wrapping the core package.

Every endpoint is a stateless computation: requests carry graph content
or generator parameters, responses carry the full machine-readable
reports (the CLI is a thin client of this service).  Input problems map
to HTTP 400; a sign-rule consistency violation (which the theory says
cannot happen) maps to HTTP 500.
"""
from __future__ import annotations

import io

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..correlations import CorrelationReport
from ..errors import ConsistencyViolationError, FpgapError
from ..generators import (
    GnpSpec,
    assign_bernoulli_weights,
    child_seed,
    configuration_rewire,
    derive_seed,
)
from ..graph import classify
from ..ingest import (
    attribute_column,
    derive_homophily_weights,
    derive_prop_own,
    graph_from_edges,
    load_graph,
)
from ..metrics import GapReport
from ..report import Analysis, analyze_graph
from ..simulation import (
    SimulationSummary,
    SweepSpec,
    compare_original_vs_config,
    run_sweep,
    scatter_table,
)
from ..verify import run_property_suite
from . import schemas as S

CORR_COLUMN_FOR_PARADOX = {
    "lafp": "r_da",
    "safp": "r_delta_a",
    "lwafp": "r_wa",
    "swafp": "r_gamma_a",
}


def _report_model(analysis: Analysis) -> S.ReportModel:
    return S.ReportModel(
        graph=S.graph_info(analysis.graph.n, analysis.graph.m, analysis.graph_class),
        gaps=S.gaps_model(analysis.gaps),
        correlations=S.correlations_model(analysis.correlations),
        consistency=S.consistency_model(analysis.consistency),
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(x) for x in row) + "\n")
    return buf.getvalue()


def _conditions_csv(summary: SimulationSummary) -> str:
    rows = []
    for c in summary.conditions:
        for paradox in ("lafp", "safp", "lwafp", "swafp"):
            corr = CORR_COLUMN_FOR_PARADOX[paradox]
            rows.append(
                [
                    c.j,
                    paradox,
                    c.failures[paradox],
                    c.runs,
                    c.failure_proportions[paradox],
                    c.corr_mean[corr],
                    c.corr_sd[corr],
                    c.undefined_corrs[corr],
                    c.zero_gaps,
                    c.sign_violations,
                ]
            )
    return _csv(
        [
            "condition",
            "paradox",
            "failures",
            "runs",
            "failure_proportion",
            "corr_mean",
            "corr_sd",
            "undefined_corrs",
            "zero_gaps",
            "sign_violations",
        ],
        rows,
    )


def _scatter_csv(summary: SimulationSummary) -> str:
    rows = [
        [r.condition, r.run, r.paradox, r.correlation, r.gap] for r in summary.scatter
    ]
    return _csv(["condition", "run", "paradox", "correlation", "gap"], rows)


def create_app() -> FastAPI:
    app = FastAPI(title="fpgap", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/analyze", response_model=S.AnalyzeResponse)
    def analyze(req: S.AnalyzeRequest) -> S.AnalyzeResponse:
        try:
            return _analyze(req)
        except ConsistencyViolationError as e:
            raise HTTPException(status_code=500, detail=str(e)) from e
        except FpgapError as e:
            raise HTTPException(status_code=400, detail=str(e)) from e

    @app.post("/simulate", response_model=S.SimulateResponse)
    def simulate(req: S.SimulateRequest) -> S.SimulateResponse:
        try:
            spec = SweepSpec(
                runs=req.runs,
                graph=GnpSpec(n=req.n, p=req.p, weight_max=req.weight_max),
                conditions=tuple(req.conditions),
                master_seed=req.seed,
            )
            summary = run_sweep(spec, workers=req.workers)
        except ConsistencyViolationError as e:
            raise HTTPException(status_code=500, detail=str(e)) from e
        except (FpgapError, ValueError) as e:
            raise HTTPException(status_code=400, detail=str(e)) from e
        return S.SimulateResponse(
            summary=S.summary_model(summary, req.n, req.p, req.weight_max, req.seed),
            conditions_csv=_conditions_csv(summary),
            scatter_csv=_scatter_csv(summary),
        )

    @app.post("/pipeline", response_model=S.PipelineResponse)
    def pipeline(req: S.PipelineRequest) -> S.PipelineResponse:
        try:
            return _pipeline(req)
        except ConsistencyViolationError as e:
            raise HTTPException(status_code=500, detail=str(e)) from e
        except FpgapError as e:
            raise HTTPException(status_code=400, detail=str(e)) from e

    @app.post("/verify", response_model=S.VerifyResponse)
    def verify(req: S.VerifyRequest) -> S.VerifyResponse:
        report = run_property_suite(
            graphs=req.graphs, max_n=req.max_n, seed=req.seed, inject_fault=req.inject_fault
        )
        return S.VerifyResponse(
            ok=report.ok,
            graphs=report.graphs,
            max_n=report.max_n,
            seed=report.seed,
            properties=[
                S.PropertyModel(
                    name=r.name,
                    checked=r.checked,
                    passed=r.passed,
                    violations=list(r.violations),
                )
                for r in report.results
            ],
        )

    return app


def _analyze(req: S.AnalyzeRequest) -> S.AnalyzeResponse:
    dropped_isolates = dropped_dups = dropped_loops = 0
    metadata = None
    if req.edge_text is not None:
        loaded = load_graph(
            req.edge_text,
            metadata_text=req.metadata_text,
            lenient=req.lenient,
            missing_token=req.missing_token,
        )
        g = loaded.graph
        metadata = loaded.metadata
        dropped_isolates = loaded.dropped_isolates
        dropped_dups = loaded.dropped_duplicate_edges
        dropped_loops = loaded.dropped_self_loops
    else:
        g = graph_from_edges([(a, b, w) for a, b, w in req.edges], attributes=req.attributes)

    attribute_source = "reduction"
    if req.attr_column is not None:
        if metadata is None:
            raise HTTPException(
                status_code=400, detail="attr_column given but no metadata_text provided"
            )
        g = g.with_attributes(attribute_column(g, metadata, req.attr_column))
        attribute_source = "column"
    elif req.attributes is not None and req.edges is not None:
        attribute_source = "explicit"

    if req.strict_connected and not classify(g).connected:
        raise HTTPException(status_code=400, detail="graph not connected (strict mode)")

    analysis = analyze_graph(g)
    return S.AnalyzeResponse(
        report=_report_model(analysis),
        attribute_source=attribute_source,
        dropped_isolates=dropped_isolates,
        dropped_duplicate_edges=dropped_dups,
        dropped_self_loops=dropped_loops,
    )


def _pipeline(req: S.PipelineRequest) -> S.PipelineResponse:
    networks: list[S.NetworkReportModel] = []
    originals: list[tuple[GapReport, CorrelationReport]] = []
    rewireds: list[tuple[GapReport, CorrelationReport]] = []
    ids: list[str] = []
    for idx, net in enumerate(req.networks):
        net_id = net.network_id if net.network_id is not None else str(idx)
        ids.append(net_id)
        loaded = load_graph(
            net.edge_text,
            metadata_text=net.metadata_text,
            lenient=req.lenient,
            missing_token=req.missing_token,
        )
        if loaded.metadata is None:
            raise HTTPException(status_code=400, detail=f"network {net_id}: metadata required")
        g = loaded.graph
        attrs = derive_prop_own(g, loaded.metadata, req.gender_column)
        gw, p2 = derive_homophily_weights(g, loaded.metadata, req.year_column)
        analysis = analyze_graph(gw.with_attributes(attrs))
        originals.append((analysis.gaps, analysis.correlations))

        rewired_model = None
        rewired_p2 = None
        if req.config_model:
            topo = configuration_rewire(
                gw.with_attributes(attrs), seed=derive_seed(req.seed, idx, 0)
            )
            rew = assign_bernoulli_weights(topo, p2, child_seed(req.seed, idx, 1))
            rew_analysis = analyze_graph(rew)
            rewireds.append((rew_analysis.gaps, rew_analysis.correlations))
            rewired_model = _report_model(rew_analysis)
            rewired_p2 = (
                float((rew.edge_w == 2.0).sum()) / rew.m if rew.m else 0.0
            )
        networks.append(
            S.NetworkReportModel(
                network_id=net_id,
                p2=p2,
                attribute_mean=float(attrs.mean()),
                report=_report_model(analysis),
                rewired_report=rewired_model,
                rewired_p2=rewired_p2,
            )
        )

    table = scatter_table(originals, network_ids=ids)
    scatter = S.ScatterModel(
        rows=[
            S.ScatterRowModel(network_id=nid, paradox=p, correlation=c, gap=gp)
            for nid, p, c, gp in table.rows
        ],
        across={k: v.value for k, v in table.across.items()},
    )
    comparison = None
    if req.config_model:
        cmp_table = compare_original_vs_config(originals, rewireds, network_ids=ids)
        comparison = S.ComparisonModel(
            pairs=[
                S.ComparisonPairModel(network_id=nid, metric=m, original=x, rewired=y)
                for nid, m, x, y in cmp_table.pairs
            ],
            slopes=cmp_table.slopes,
        )
    return S.PipelineResponse(networks=networks, scatter=scatter, comparison=comparison)


app = create_app()
