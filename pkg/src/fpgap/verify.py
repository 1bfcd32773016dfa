"""Randomized property suite: every theorem the package relies on,
checked against brute force on seeded random graphs.

Backs the CLI/service verify command.  The fault-injection flag flips the
sign of one computed gap so the harness can prove it actually detects
violations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import check_sign_consistency, sign_rule_report
from .generators import GnpSpec, child_seed, derive_seed, generate_accepted_gnp
from .graph import Graph, node_quantities
from .metrics import full_report, gap_lefp, gap_sefp
from .oracle import oracle_exact, oracle_list_gap, oracle_singular_gap

SUITE_PROPERTIES = (
    "delta_gamma_sums",
    "base_gap_nonnegativity",
    "oracle_equivalence",
    "sign_rules",
    "shift_negation_invariance",
    "always_positive_topology",
)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    checked: int
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class PropertyReport:
    graphs: int
    max_n: int
    seed: int
    results: tuple[PropertyResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


def _close(x: float, y: float, rel: float = 1e-12) -> bool:
    return abs(x - y) <= rel * max(1.0, abs(x), abs(y))


def _sample_graph(seed: int, k: int, max_n: int) -> Graph:
    rng = np.random.default_rng(child_seed(seed, k, 0))
    n = int(rng.integers(5, max_n + 1))
    p_lo = min(0.6, max(0.15, 2.0 * np.log(n) / n))
    p = float(rng.uniform(p_lo, 0.7))
    g, _ = generate_accepted_gnp(GnpSpec(n=n, p=p, weight_max=10, seed=derive_seed(seed, k, 1)))
    return g


def run_property_suite(
    graphs: int = 100, max_n: int = 30, seed: int = 0, inject_fault: bool = False
) -> PropertyReport:
    checks = {name: [0, []] for name in SUITE_PROPERTIES}

    def record(name: str, ok: bool, detail: str):
        checks[name][0] += 1
        if not ok:
            checks[name][1].append(detail)

    for k in range(graphs):
        g = _sample_graph(seed, k, max_n)
        q = node_quantities(g)
        n = g.n
        rng = np.random.default_rng(child_seed(seed, k, 2))

        record(
            "delta_gamma_sums",
            abs(float(q.delta.sum()) - n) <= 1e-9 * n
            and abs(float(q.gamma.sum()) - n) <= 1e-9 * n,
            f"graph {k}: sum(delta)={q.delta.sum()!r} sum(gamma)={q.gamma.sum()!r} n={n}",
        )

        report = full_report(g)
        base = {name: report.value(name) for name in ("lfp", "sfp", "lwfp", "swfp")}
        if inject_fault and k == 0:
            base["lfp"] = -base["lfp"]
        record(
            "base_gap_nonnegativity",
            all(v > 0 for v in base.values()),
            f"graph {k}: non-attribute gap not strictly positive: {base}",
        )

        # Oracle cross-checks: float attributes against list semantics,
        # integer attributes against the exact rational oracle.
        a_float = rng.standard_normal(n)
        unit = g.with_unit_weights()
        q_unit = node_quantities(unit)
        comparisons = [
            ("lwafp", gap_lefp(g, q, a_float), oracle_list_gap(g, a_float, weighted=True)),
            ("swafp", gap_sefp(g, q, a_float), oracle_singular_gap(g, a_float, weighted=True)),
            ("lafp", gap_lefp(unit, q_unit, a_float), oracle_list_gap(g, a_float, weighted=False)),
            ("safp", gap_sefp(unit, q_unit, a_float),
             oracle_singular_gap(g, a_float, weighted=False)),
        ]
        ok = all(_close(x, y) for _, x, y in comparisons)
        a_int = rng.integers(-5, 6, size=n).astype(np.float64)
        exact = oracle_exact(g, a=[int(x) for x in a_int])
        rep_int = full_report(g.with_attributes(a_int))
        ok = ok and all(rep_int.value(name) == float(exact[name]) for name in exact)
        ok = ok and all(report.value(name) == float(v) for name, v in oracle_exact(g).items())
        record("oracle_equivalence", ok, f"graph {k}: closed form disagrees with oracle")

        d = q.degree.astype(np.float64)
        ok = True
        for a in (a_float, a_float + 0.5 * d, a_float - 0.5 * d):
            rep_a = full_report(g.with_attributes(a))
            cons = check_sign_consistency(rep_a, sign_rule_report(q, a))
            ok = ok and cons.ok
        rep_const = full_report(g.with_attributes(np.full(n, 7.0)))
        corr_const = sign_rule_report(q, np.full(n, 7.0))
        ok = ok and not corr_const.r_wa.defined and not corr_const.r_gamma_a.defined
        ok = ok and all(rep_const.zero_flags[name] for name in ("lafp", "safp", "lwafp", "swafp"))
        record("sign_rules", ok, f"graph {k}: sign rule or undefined-zero case violated")

        c = float(rng.uniform(-10, 10))
        ok = (
            _close(gap_lefp(g, q, a_float + c), gap_lefp(g, q, a_float), rel=1e-9)
            and _close(gap_sefp(g, q, a_float + c), gap_sefp(g, q, a_float), rel=1e-9)
            and _close(gap_lefp(g, q, -a_float), -gap_lefp(g, q, a_float), rel=1e-9)
            and _close(gap_sefp(g, q, -a_float), -gap_sefp(g, q, a_float), rel=1e-9)
        )
        record("shift_negation_invariance", ok, f"graph {k}: shift/negation identity violated")

        topo = sign_rule_report(q)
        ok = (not topo.r_d_delta.defined or topo.r_d_delta.value > 0) and (
            not topo.r_w_gamma.defined or topo.r_w_gamma.value > 0
        )
        record(
            "always_positive_topology",
            ok,
            f"graph {k}: r_d_delta={topo.r_d_delta.value} r_w_gamma={topo.r_w_gamma.value}",
        )

    results = tuple(
        PropertyResult(name=name, checked=checks[name][0], violations=tuple(checks[name][1]))
        for name in SUITE_PROPERTIES
    )
    return PropertyReport(graphs=graphs, max_n=max_n, seed=seed, results=results)
