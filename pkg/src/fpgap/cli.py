"""Command-line client for the analysis service.

Each command reads local files, posts a request to the service (an
in-process instance by default, or a remote one via --server), and
writes the machine-readable response to files.  All randomness is seeded
through request parameters, so reruns with the same seed produce
byte-identical output.  Exit codes: 0 ok, 1 input error, 2 internal
consistency violation (sign rule or property suite).
"""
from __future__ import annotations

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx
from click.core import ParameterSource

FULL_SCALE = {"n": 1000, "p": 0.02, "runs": 1000, "conditions": "-100..100"}

GAP_KEYS = ("lfp", "sfp", "lwfp", "swfp", "lafp", "safp", "lwafp", "swafp")
CORR_KEYS = ("d_a", "delta_a", "w_a", "gamma_a", "d_delta", "w_gamma", "d_w")


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.post(path, json=payload)

    async def _call() -> httpx.Response:
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://fpgap.internal", timeout=None
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(_call())


def _checked(response: httpx.Response) -> dict:
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    click.echo(f"error: {detail}", err=True)
    sys.exit(2 if response.status_code == 500 else 1)


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)


def _write(path: str, content: str | bytes) -> None:
    if path == "-":
        out = content.decode() if isinstance(content, bytes) else content
        click.echo(out, nl=False)
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(content, bytes):
        p.write_bytes(content)
    else:
        p.write_text(content)


def _parse_conditions(text: str) -> list[int]:
    text = text.strip()
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if lo > hi:
            raise click.BadParameter(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(part) for part in text.split(",") if part.strip() != ""]


@click.group()
def main() -> None:
    """Friendship-paradox gap analytics."""


@main.command()
@click.argument("edge_file", type=click.Path())
@click.option("--attrs", "attrs_file", type=click.Path(), help="Node metadata file.")
@click.option("--attr-col", help="Metadata column to use as the node attribute.")
@click.option("--strict-connected", is_flag=True, help="Reject disconnected graphs.")
@click.option("--lenient", is_flag=True, help="Drop duplicate edges/self-loops with counts.")
@click.option("--missing-token", default=None, help="Metadata value treated as missing.")
@click.option("--json", "json_out", type=click.Path(), help="Write full JSON report ('-' = stdout).")
@click.option("--csv", "csv_out", type=click.Path(), help="Write flat CSV report ('-' = stdout).")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def analyze(edge_file, attrs_file, attr_col, strict_connected, lenient, missing_token,
            json_out, csv_out, server):
    """Compute all eight gaps, sign correlations, and verdicts for a graph file."""
    payload = {
        "edge_text": _read_file(edge_file),
        "metadata_text": _read_file(attrs_file) if attrs_file else None,
        "attr_column": attr_col,
        "strict_connected": strict_connected,
        "lenient": lenient,
        "missing_token": missing_token,
    }
    response = _post(server, "/analyze", payload)
    data = _checked(response)
    if json_out:
        _write(json_out, response.content)
    if csv_out:
        _write(csv_out, _analyze_csv(data))
    if not json_out and not csv_out:
        _echo_analysis(data)
    if not data["report"]["consistency"]["ok"]:
        click.echo("error: gap/correlation sign consistency violated", err=True)
        sys.exit(2)


def _analyze_csv(data: dict) -> str:
    report = data["report"]
    lines = ["kind,name,value,qualifier,zero"]
    for key, value in report["graph"].items():
        lines.append(f"graph,{key},{value},,")
    for name in GAP_KEYS:
        entry = report["gaps"][name]
        lines.append(f"gap,{name},{entry['value']!r},{entry['verdict']},{entry['zero']}")
    for name in CORR_KEYS:
        entry = report["correlations"][name]
        value = entry["value"] if entry["value"] != "undefined" else "undefined"
        value_text = repr(value) if isinstance(value, float) else value
        prediction = entry["prediction"] or ""
        lines.append(f"correlation,{name},{value_text},{prediction},")
    lines.append(f"consistency,ok,{report['consistency']['ok']},,")
    return "\n".join(lines) + "\n"


def _echo_analysis(data: dict) -> None:
    report = data["report"]
    g = report["graph"]
    click.echo(
        f"graph: n={g['n']} m={g['m']} connected={g['connected']} "
        f"regular={g['regular']} weighted_regular={g['weighted_regular']}"
    )
    click.echo(f"attribute source: {data['attribute_source']}")
    if data["dropped_isolates"] or data["dropped_duplicate_edges"] or data["dropped_self_loops"]:
        click.echo(
            f"dropped: isolates={data['dropped_isolates']} "
            f"duplicates={data['dropped_duplicate_edges']} "
            f"self_loops={data['dropped_self_loops']}"
        )
    click.echo(f"{'gap':<8}{'value':>14}  {'verdict':<8}{'zero'}")
    for name in GAP_KEYS:
        entry = report["gaps"][name]
        click.echo(
            f"{name:<8}{entry['value']:>14.6g}  {entry['verdict']:<8}"
            f"{'yes' if entry['zero'] else 'no'}"
        )
    click.echo(f"{'corr':<10}{'value':>14}  {'prediction'}")
    for name in CORR_KEYS:
        entry = report["correlations"][name]
        value = entry["value"]
        value_text = f"{value:>14.6g}" if isinstance(value, float) else f"{value:>14}"
        click.echo(f"{name:<10}{value_text}  {entry['prediction'] or '-'}")
    click.echo(f"consistency: {'ok' if report['consistency']['ok'] else 'VIOLATED'}")


@main.command()
@click.option("--n", default=300, show_default=True, help="Graph size.")
@click.option("--p", default=0.02, show_default=True, help="Edge probability.")
@click.option("--runs", default=200, show_default=True, help="Accepted graphs per condition sweep.")
@click.option("--conditions", default="-5..5", show_default=True,
              help="Condition set: 'lo..hi' or comma list.")
@click.option("--weight-max", default=10, show_default=True, help="Max integer edge weight.")
@click.option("--seed", default=0, show_default=True, help="Master seed.")
@click.option("--workers", default=None, type=int,
              help="Parallel workers (default: PARADOX_THREADS or 1).")
@click.option("--full-scale", is_flag=True,
              help="Use n=1000, p=0.02, runs=1000, conditions -100..100 for options not set.")
@click.option("--out", "out_dir", required=True, type=click.Path(),
              help="Output directory (summary.json, conditions.csv, scatter.csv).")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
@click.pass_context
def simulate(ctx, n, p, runs, conditions, weight_max, seed, workers, full_scale, out_dir,
             server):
    """Run the condition sweep and write plot-ready tables."""
    if full_scale:
        defaults = {"n": n, "p": p, "runs": runs, "conditions": conditions}
        for key, full_value in FULL_SCALE.items():
            if ctx.get_parameter_source(key) == ParameterSource.DEFAULT:
                defaults[key] = full_value
        n, p, runs, conditions = (defaults["n"], defaults["p"], defaults["runs"],
                                  defaults["conditions"])
    payload = {
        "n": n,
        "p": p,
        "runs": runs,
        "conditions": _parse_conditions(conditions),
        "weight_max": weight_max,
        "seed": seed,
        "workers": workers,
    }
    data = _checked(_post(server, "/simulate", payload))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write(str(out / "summary.json"), json.dumps(data["summary"], indent=2) + "\n")
    _write(str(out / "conditions.csv"), data["conditions_csv"])
    _write(str(out / "scatter.csv"), data["scatter_csv"])
    summary = data["summary"]
    click.echo(
        f"sweep done: runs={summary['runs']} conditions={len(summary['conditions'])} "
        f"discarded={summary['discarded_graphs']} "
        f"sign_violations={summary['sign_violations_total']}"
    )
    for c in summary["conditions"]:
        props = " ".join(
            f"{k}={c['failure_proportions'][k]:.3f}" for k in ("lafp", "safp", "lwafp", "swafp")
        )
        click.echo(f"  j={c['condition']:+d} fail: {props}")


@main.command()
@click.argument("files", nargs=-1, type=click.Path())
@click.option("--gender-col", required=True, help="Metadata column for the prop_own attribute.")
@click.option("--year-col", required=True, help="Metadata column for homophily weights.")
@click.option("--config-model", is_flag=True,
              help="Also rewire each network (configuration model) and compare.")
@click.option("--seed", default=0, show_default=True)
@click.option("--lenient", is_flag=True)
@click.option("--missing-token", default=None)
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def pipeline(files, gender_col, year_col, config_model, seed, lenient, missing_token,
             out_dir, server):
    """Run the data pipeline on EDGE_FILE METADATA_FILE pairs.

    Builds the prop_own attribute from --gender-col, homophily weights
    from --year-col, analyzes each network, and (with --config-model)
    compares against a degree-preserving rewiring.
    """
    if len(files) < 2 or len(files) % 2 != 0:
        click.echo("error: provide EDGE_FILE METADATA_FILE pairs", err=True)
        sys.exit(1)
    networks = []
    for i in range(0, len(files), 2):
        networks.append(
            {
                "network_id": Path(files[i]).stem,
                "edge_text": _read_file(files[i]),
                "metadata_text": _read_file(files[i + 1]),
            }
        )
    payload = {
        "networks": networks,
        "gender_column": gender_col,
        "year_column": year_col,
        "config_model": config_model,
        "seed": seed,
        "lenient": lenient,
        "missing_token": missing_token,
    }
    response = _post(server, "/pipeline", payload)
    data = _checked(response)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write(str(out / "report.json"), response.content)
    rows = ["network_id,paradox,correlation,gap"]
    for r in data["scatter"]["rows"]:
        corr = "" if r["correlation"] is None else repr(r["correlation"])
        rows.append(f"{r['network_id']},{r['paradox']},{corr},{r['gap']!r}")
    _write(str(out / "scatter.csv"), "\n".join(rows) + "\n")
    if data["comparison"] is not None:
        pair_rows = ["network_id,metric,original,rewired"]
        for pr in data["comparison"]["pairs"]:
            x = "" if pr["original"] is None else repr(pr["original"])
            y = "" if pr["rewired"] is None else repr(pr["rewired"])
            pair_rows.append(f"{pr['network_id']},{pr['metric']},{x},{y}")
        _write(str(out / "comparison.csv"), "\n".join(pair_rows) + "\n")
        slope_rows = ["metric,slope"]
        for metric, slope in data["comparison"]["slopes"].items():
            slope_rows.append(f"{metric},{'' if slope is None else repr(slope)}")
        _write(str(out / "slopes.csv"), "\n".join(slope_rows) + "\n")
    for net in data["networks"]:
        fails = sum(
            net["report"]["gaps"][k]["verdict"] == "fails" for k in GAP_KEYS
        )
        click.echo(
            f"{net['network_id']}: p2={net['p2']:.3f} attr_mean={net['attribute_mean']:.3f} "
            f"failing_gaps={fails}/8"
        )


@main.command()
@click.option("--graphs", default=100, show_default=True, help="Random graphs to test.")
@click.option("--max-n", default=30, show_default=True, help="Max graph size.")
@click.option("--seed", default=0, show_default=True)
@click.option("--inject-fault", is_flag=True, hidden=True,
              help="Flip one gap sign to prove the harness detects violations.")
@click.option("--json", "json_out", type=click.Path(), help="Write JSON report ('-' = stdout).")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def verify(graphs, max_n, seed, inject_fault, json_out, server):
    """Run the full property suite (oracle equivalence, non-negativity,
    sign rules, delta/gamma sums, shift/negation invariance)."""
    payload = {
        "graphs": graphs,
        "max_n": max_n,
        "seed": seed,
        "inject_fault": inject_fault,
    }
    response = _post(server, "/verify", payload)
    data = _checked(response)
    if json_out:
        _write(json_out, response.content)
    for prop in data["properties"]:
        status = "pass" if prop["passed"] else "FAIL"
        click.echo(f"{status}  {prop['name']} ({prop['checked']} checks)")
        for violation in prop["violations"][:5]:
            click.echo(f"      {violation}")
    if not data["ok"]:
        click.echo("verification FAILED", err=True)
        sys.exit(2)
    click.echo(f"all properties hold on {data['graphs']} graphs")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
