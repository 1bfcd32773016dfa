"""Friendship-paradox gap analytics for weighted undirected graphs."""

from .graph import (
    Graph,
    GraphClass,
    NodeQuantities,
    RejectReason,
    build_graph,
    classify,
    drop_isolates,
    from_arrays,
    is_connected,
    node_quantities,
)
from .metrics import GAP_NAMES, EPS_ZERO, GapReport, Verdict, full_report
from .correlations import (
    ATTR_GAP_NAMES,
    Correlation,
    CorrelationReport,
    ConsistencyReport,
    Prediction,
    check_sign_consistency,
    pearson,
    sign_rule_report,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphClass",
    "NodeQuantities",
    "RejectReason",
    "build_graph",
    "classify",
    "drop_isolates",
    "from_arrays",
    "is_connected",
    "node_quantities",
    "GAP_NAMES",
    "EPS_ZERO",
    "GapReport",
    "Verdict",
    "full_report",
    "ATTR_GAP_NAMES",
    "Correlation",
    "CorrelationReport",
    "ConsistencyReport",
    "Prediction",
    "check_sign_consistency",
    "pearson",
    "sign_rule_report",
    "__version__",
]
