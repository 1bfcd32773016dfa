"""One-stop analysis of a single graph: class, gaps, correlations,
and the sign-consistency self-check.
"""
from __future__ import annotations

from dataclasses import dataclass

from .correlations import (
    ConsistencyReport,
    CorrelationReport,
    check_sign_consistency,
    sign_rule_report,
)
from .graph import Graph, GraphClass, NodeQuantities, classify, node_quantities
from .metrics import GapReport, full_report


@dataclass(frozen=True)
class Analysis:
    graph: Graph
    graph_class: GraphClass
    quantities: NodeQuantities
    gaps: GapReport
    correlations: CorrelationReport
    consistency: ConsistencyReport


def analyze_graph(g: Graph) -> Analysis:
    """Full report for one no-isolate graph.

    Attribute gaps and correlations use g.attributes when present and the
    reduction (a := w, a := d) otherwise.
    """
    q = node_quantities(g)
    gaps = full_report(g)
    corrs = sign_rule_report(q, g.attributes)
    return Analysis(
        graph=g,
        graph_class=classify(g),
        quantities=q,
        gaps=gaps,
        correlations=corrs,
        consistency=check_sign_consistency(gaps, corrs),
    )
