"""File ingestion: delimited edge lists, node metadata tables, and the
campus-style attribute/weight constructions.

Edge files hold one edge per line: source, target, optional positive
weight (default 1).  Metadata files start with a header line whose first
column is the node label.  The delimiter (tab, comma, or whitespace) is
autodetected per file.  Lines starting with '#' and blank lines are
skipped.  Node labels are arbitrary strings, mapped to dense internal
ids in order of first appearance and preserved in reports.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateEdgeError,
    IsolatePresentError,
    MissingColumnError,
    NonPositiveWeightError,
    ParseError,
    SelfLoopError,
    UnknownNodeInMetadataError,
)
from .graph import Graph, drop_isolates, from_arrays


@dataclass(frozen=True)
class MetadataTable:
    """Per-node string-valued columns with a configurable missing token.

    A value is missing when it equals the missing token or is empty;
    nodes absent from the table are all-missing.
    """

    columns: tuple[str, ...]
    rows: dict[str, dict[str, str]]
    missing_token: str | None = None

    def value(self, label: str, column: str) -> str | None:
        if column not in self.columns:
            raise MissingColumnError(
                f"column {column!r} not in metadata (have: {', '.join(self.columns)})"
            )
        raw = self.rows.get(label, {}).get(column, "")
        if raw == "" or (self.missing_token is not None and raw == self.missing_token):
            return None
        return raw


@dataclass(frozen=True)
class LoadedGraph:
    graph: Graph
    metadata: MetadataTable | None
    dropped_isolates: int
    dropped_duplicate_edges: int
    dropped_self_loops: int


def _detect_delimiter(line: str) -> str | None:
    if "\t" in line:
        return "\t"
    if "," in line:
        return ","
    return None  # whitespace


def _split(line: str, delim: str | None) -> list[str]:
    parts = line.split(delim) if delim else line.split()
    return [p.strip() for p in parts if p.strip() != ""] if delim is None else [
        p.strip() for p in parts
    ]


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_edge_list(
    text: str, lenient: bool = False
) -> tuple[list[tuple[str, str, float]], int, int, list[str]]:
    """Parse edges as (source, target, weight).

    Also returns the dropped duplicate and self-loop counts (nonzero only
    in lenient mode) and every label mentioned anywhere in the file, so a
    node whose lines were all dropped still surfaces as an isolate.
    """
    delim: str | None = None
    first = True
    edges: list[tuple[str, str, float]] = []
    seen: set[tuple[str, str]] = set()
    mentioned: dict[str, None] = {}
    dup_dropped = 0
    loop_dropped = 0
    for lineno, line in _content_lines(text):
        if first:
            delim = _detect_delimiter(line)
            first = False
        parts = _split(line, delim)
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'source target [weight]', got {line!r}", lineno)
        a, b = parts[0], parts[1]
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise ParseError(f"bad weight {parts[2]!r}", lineno) from None
            if not (w > 0) or not np.isfinite(w):
                raise NonPositiveWeightError(f"line {lineno}: weight must be positive, got {w}")
        else:
            w = 1.0
        mentioned.setdefault(a)
        mentioned.setdefault(b)
        if a == b:
            if lenient:
                loop_dropped += 1
                continue
            raise SelfLoopError(f"line {lineno}: self-loop on {a!r}")
        key = (a, b) if a <= b else (b, a)
        if key in seen:
            if lenient:
                dup_dropped += 1
                continue
            raise DuplicateEdgeError(f"line {lineno}: duplicate edge {a!r}-{b!r}")
        seen.add(key)
        edges.append((a, b, w))
    if not edges:
        raise ParseError("no edges found")
    return edges, dup_dropped, loop_dropped, list(mentioned)


def parse_metadata(text: str, missing_token: str | None = None) -> MetadataTable:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty metadata file")
    header_no, header = lines[0]
    delim = _detect_delimiter(header)
    cols = _split(header, delim)
    if len(cols) < 2:
        raise ParseError("metadata header needs a label column plus at least one value column",
                         header_no)
    columns = tuple(cols[1:])
    rows: dict[str, dict[str, str]] = {}
    for lineno, line in lines[1:]:
        parts = _split(line, delim)
        if len(parts) > len(cols):
            raise ParseError(f"row has {len(parts)} fields, header has {len(cols)}", lineno)
        parts += [""] * (len(cols) - len(parts))
        label = parts[0]
        if label in rows:
            raise ParseError(f"node {label!r} appears more than once in metadata", lineno)
        rows[label] = dict(zip(columns, parts[1:]))
    return MetadataTable(columns=columns, rows=rows, missing_token=missing_token)


def graph_from_edges(
    edges: list[tuple[str, str, float]],
    attributes: dict[str, float] | None = None,
    extra_labels: list[str] | None = None,
) -> Graph:
    """Build a Graph from labeled edges, mapping labels in order of first use.

    ``extra_labels`` adds nodes with no surviving edges (they become
    isolates for the caller to drop and count).
    """
    index: dict[str, int] = {}
    for a, b, _ in edges:
        for lbl in (a, b):
            if lbl not in index:
                index[lbl] = len(index)
    for lbl in extra_labels or ():
        if lbl not in index:
            index[lbl] = len(index)
    n = len(index)
    u = np.fromiter((index[a] for a, _, _ in edges), dtype=np.int64, count=len(edges))
    v = np.fromiter((index[b] for _, b, _ in edges), dtype=np.int64, count=len(edges))
    w = np.fromiter((wt for _, _, wt in edges), dtype=np.float64, count=len(edges))
    labels = list(index)
    attr_vec = None
    if attributes is not None:
        missing = [lbl for lbl in labels if lbl not in attributes]
        if missing:
            raise UnknownNodeInMetadataError(
                f"no attribute for node(s): {', '.join(missing[:5])}"
            )
        attr_vec = [float(attributes[lbl]) for lbl in labels]
    return from_arrays(n, u, v, w, attributes=attr_vec, labels=labels, validated=True)


def load_graph(
    edge_text: str,
    metadata_text: str | None = None,
    lenient: bool = False,
    missing_token: str | None = None,
) -> LoadedGraph:
    """Parse an edge list (plus optional metadata), drop isolates, and
    verify every metadata node exists in the graph.
    """
    edges, dups, loops, mentioned = parse_edge_list(edge_text, lenient=lenient)
    g = graph_from_edges(edges, extra_labels=mentioned)
    g, dropped = drop_isolates(g)
    metadata = None
    if metadata_text is not None:
        metadata = parse_metadata(metadata_text, missing_token=missing_token)
        known = set(g.labels or ())
        unknown = [lbl for lbl in metadata.rows if lbl not in known]
        if unknown:
            raise UnknownNodeInMetadataError(
                f"metadata names node(s) not in graph: {', '.join(sorted(unknown)[:5])}"
            )
    return LoadedGraph(
        graph=g,
        metadata=metadata,
        dropped_isolates=dropped,
        dropped_duplicate_edges=dups,
        dropped_self_loops=loops,
    )


def attribute_column(g: Graph, metadata: MetadataTable, column: str) -> np.ndarray:
    """Read a numeric attribute column for every graph node (no missing allowed)."""
    values = []
    for i in range(1, g.n + 1):
        raw = metadata.value(g.label_of(i), column)
        if raw is None:
            raise ParseError(f"node {g.label_of(i)!r} has no value for column {column!r}")
        try:
            values.append(float(raw))
        except ValueError:
            raise ParseError(
                f"node {g.label_of(i)!r}: non-numeric value {raw!r} in column {column!r}"
            ) from None
    return np.asarray(values, dtype=np.float64)


def derive_prop_own(g: Graph, metadata: MetadataTable, column: str) -> np.ndarray:
    """Per-node share of neighbors with the same column value as the node.

    Missing counts as a regular value (two missing values match); neighbor
    counting ignores edge weights.
    """
    deg = g.degrees
    if np.any(deg == 0):
        raise IsolatePresentError("drop isolates before deriving prop_own")
    values = [metadata.value(g.label_of(i), column) for i in range(1, g.n + 1)]
    same = np.zeros(g.n, dtype=np.float64)
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        if values[u] == values[v]:
            same[u] += 1.0
            same[v] += 1.0
    return same / deg


def derive_homophily_weights(
    g: Graph, metadata: MetadataTable, column: str
) -> tuple[Graph, float]:
    """Weight 2 for edges whose endpoints share a non-missing column value,
    otherwise 1 (pairs of missing values stay at 1).  Returns the new
    graph and p2, the fraction of weight-2 edges.
    """
    values = [metadata.value(g.label_of(i), column) for i in range(1, g.n + 1)]
    w = np.ones(g.m, dtype=np.float64)
    for k, (u, v) in enumerate(zip(g.edge_u.tolist(), g.edge_v.tolist())):
        if values[u] is not None and values[u] == values[v]:
            w[k] = 2.0
    p2 = float(np.count_nonzero(w == 2.0)) / g.m if g.m else 0.0
    return g.with_weights(w), p2


def write_edge_list(g: Graph) -> str:
    """Serialize as tab-delimited 'source target weight' lines (canonical
    edge order); loading the result reproduces the same graph.
    """
    lines = []
    for i, j, w in g.edges():
        wtxt = repr(int(w)) if w == int(w) else repr(w)
        lines.append(f"{g.label_of(i)}\t{g.label_of(j)}\t{wtxt}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: Graph) -> dict:
    """Graph as a JSON-ready dict mirroring the internal model."""
    nodes = []
    for i in range(1, g.n + 1):
        node: dict = {"label": g.label_of(i)}
        if g.attributes is not None:
            node["attribute"] = float(g.attributes[i - 1])
        nodes.append(node)
    edges = [
        {"source": g.label_of(i), "target": g.label_of(j), "weight": w}
        for i, j, w in g.edges()
    ]
    return {"n": g.n, "nodes": nodes, "edges": edges}


def from_json_dict(data: dict) -> Graph:
    labels = [str(node["label"]) for node in data["nodes"]]
    index = {lbl: k for k, lbl in enumerate(labels)}
    u = np.asarray([index[e["source"]] for e in data["edges"]], dtype=np.int64)
    v = np.asarray([index[e["target"]] for e in data["edges"]], dtype=np.int64)
    w = np.asarray([float(e["weight"]) for e in data["edges"]], dtype=np.float64)
    attrs = None
    if data["nodes"] and "attribute" in data["nodes"][0]:
        attrs = [float(node["attribute"]) for node in data["nodes"]]
    return from_arrays(len(labels), u, v, w, attributes=attrs, labels=labels)
