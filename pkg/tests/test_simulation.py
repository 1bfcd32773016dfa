import math
import os

import pytest

from fpgap.correlations import sign_rule_report
from fpgap.errors import LengthMismatchError
from fpgap.generators import GnpSpec
from fpgap.graph import build_graph, node_quantities
from fpgap.report import analyze_graph
from fpgap.simulation import (
    SweepSpec,
    compare_original_vs_config,
    run_sweep,
    scatter_table,
    topology_correlation_stats,
)

from helpers import cycle_graph

SMALL_SPEC = SweepSpec(
    runs=40,
    graph=GnpSpec(n=120, p=0.05, weight_max=10),
    conditions=(-4, -2, 0, 2, 4),
    master_seed=11,
)


@pytest.fixture(scope="module")
def small_summary():
    return run_sweep(SMALL_SPEC)


class TestRunSweep:
    def test_deterministic(self, small_summary):
        assert run_sweep(SMALL_SPEC) == small_summary

    def test_worker_count_does_not_change_results(self, small_summary):
        assert run_sweep(SMALL_SPEC, workers=2) == small_summary

    def test_paradox_threads_env_caps_workers(self, small_summary, monkeypatch):
        monkeypatch.setenv("PARADOX_THREADS", "1")
        assert run_sweep(SMALL_SPEC, workers=8) == small_summary

    def test_no_sign_violations_and_no_base_failures(self, small_summary):
        assert small_summary.sign_violations_total == 0
        assert small_summary.base_gap_failures == {"lfp": 0, "sfp": 0, "lwfp": 0, "swfp": 0}

    def test_failure_proportions_monotone_with_slack(self, small_summary):
        stats = {c.j: c for c in small_summary.conditions}
        js = sorted(stats)
        runs = SMALL_SPEC.runs
        for paradox in ("lafp", "safp", "lwafp", "swafp"):
            for lo, hi in zip(js, js[1:]):
                p_lo = stats[lo].failure_proportions[paradox]
                p_hi = stats[hi].failure_proportions[paradox]
                pooled = (p_lo + p_hi) / 2
                slack = math.sqrt(max(pooled * (1 - pooled), 1e-9) / runs)
                assert p_hi <= p_lo + slack, (paradox, lo, hi)

    def test_condition_stats_structure(self, small_summary):
        assert [c.j for c in small_summary.conditions] == list(SMALL_SPEC.conditions)
        c0 = next(c for c in small_summary.conditions if c.j == 0)
        assert c0.runs == SMALL_SPEC.runs
        assert set(c0.failures) == {"lafp", "safp", "lwafp", "swafp"}
        assert set(c0.corr_mean) == {"r_da", "r_delta_a", "r_wa", "r_gamma_a"}
        for key, mean in c0.corr_mean.items():
            assert -1.0 <= mean <= 1.0

    def test_scatter_rows_cover_all_conditions(self, small_summary):
        rows = small_summary.scatter
        assert len(rows) == SMALL_SPEC.runs * len(SMALL_SPEC.conditions) * 4
        assert {r.condition for r in rows} == set(SMALL_SPEC.conditions)

    def test_topology_stats_defined(self, small_summary):
        for key in ("d_delta", "w_gamma", "d_w"):
            stat = small_summary.topology[key]
            assert stat.defined == SMALL_SPEC.runs
            assert 0.0 < stat.mean <= 1.0


def _analyzed(g):
    a = analyze_graph(g)
    return a.gaps, a.correlations


class TestScatterTable:
    def test_two_network_counterexample(self):
        # Unweighted fixture: lafp gap -1/4 with r_da ~ -0.866.  Star-ish
        # second network: gap -1/3 with r_da ~ -0.471.  Gap and correlation
        # move in opposite directions, so the across-network corr is -1.
        net_a = build_graph(
            [(1, 2, 1.0), (2, 3, 1.0)], n=3, attributes=[2.0, 0.0, 1.0]
        )
        net_b = build_graph(
            [(1, 2, 1.0), (2, 3, 1.0), (2, 4, 1.0)], n=4, attributes=[3.0, 0.0, 1.0, 0.0]
        )
        pairs = [_analyzed(net_a), _analyzed(net_b)]
        assert pairs[0][0].g_lafp == -0.25
        assert pairs[1][0].g_lafp == pytest.approx(-1 / 3, abs=1e-15)
        assert pairs[0][1].r_da.value == pytest.approx(-0.866, abs=1e-3)
        assert pairs[1][1].r_da.value == pytest.approx(-0.471, abs=1e-3)
        table = scatter_table(pairs, network_ids=["a", "b"])
        assert table.across["lafp"].value == pytest.approx(-1.0, abs=1e-12)
        assert ("a", "lafp", pairs[0][1].r_da.value, -0.25) in table.rows

    def test_single_network_undefined(self, path_fixture):
        table = scatter_table([_analyzed(path_fixture)])
        assert not table.across["lafp"].defined

    def test_length_mismatch(self, path_fixture):
        with pytest.raises(LengthMismatchError):
            scatter_table([_analyzed(path_fixture)], network_ids=["a", "b"])


class TestTopologyStats:
    def test_regular_graph_excluded_with_count(self, path_fixture):
        regular = cycle_graph(4)
        reports = [
            sign_rule_report(node_quantities(path_fixture)),
            sign_rule_report(node_quantities(regular)),
        ]
        stats = topology_correlation_stats(reports)
        assert stats["d_delta"].defined == 1
        assert stats["d_delta"].undefined == 1
        assert stats["d_delta"].sd is None

    def test_mean_and_sd(self, path_fixture):
        rep = sign_rule_report(node_quantities(path_fixture))
        stats = topology_correlation_stats([rep, rep])
        assert stats["d_delta"].mean == pytest.approx(1.0, abs=1e-12)
        assert stats["d_delta"].sd == pytest.approx(0.0, abs=1e-12)


class TestStepCurve:
    """Step behavior of the failure curves around j = 0.

    At desk scale (n=300) the per-run correlation noise is sd ~ 0.058
    while the j = +/-5 signal is only ~0.10-0.12, so the intrinsic tail
    failure probability is 2-5% per paradox; the assertions below bound
    that honestly.  At full scale (n=1000, opt-in via FPGAP_FULL_SCALE=1)
    the same tails are sharp near 0 and 1.
    """

    def test_desk_scale_step(self):
        spec = SweepSpec(
            runs=200,
            graph=GnpSpec(n=300, p=0.02, weight_max=10),
            conditions=(-5, 0, 5),
            master_seed=32,
        )
        summary = run_sweep(spec)
        by_j = {c.j: c for c in summary.conditions}
        assert summary.base_gap_failures == {"lfp": 0, "sfp": 0, "lwfp": 0, "swfp": 0}
        assert summary.sign_violations_total == 0
        for paradox in ("lafp", "safp", "lwafp", "swafp"):
            assert 0.4 <= by_j[0].failure_proportions[paradox] <= 0.6
            assert by_j[5].failure_proportions[paradox] <= 0.08
            assert by_j[-5].failure_proportions[paradox] >= 0.92

    @pytest.mark.skipif(
        not os.environ.get("FPGAP_FULL_SCALE"),
        reason="full-scale sweep; set FPGAP_FULL_SCALE=1 to run",
    )
    def test_full_scale_step_and_topology_means(self):
        spec = SweepSpec(
            runs=200,
            graph=GnpSpec(n=1000, p=0.02, weight_max=10),
            conditions=(-5, 0, 5),
            master_seed=0,
        )
        summary = run_sweep(spec)
        by_j = {c.j: c for c in summary.conditions}
        for paradox in ("lafp", "safp", "lwafp", "swafp"):
            assert by_j[5].failure_proportions[paradox] <= 0.005
            assert by_j[-5].failure_proportions[paradox] >= 0.995
            assert 0.4 <= by_j[0].failure_proportions[paradox] <= 0.6
        assert summary.topology["d_delta"].mean == pytest.approx(0.973, abs=0.005)
        assert summary.topology["w_gamma"].mean == pytest.approx(0.966, abs=0.005)
        assert summary.topology["d_w"].mean == pytest.approx(0.884, abs=0.01)


class TestCompareOriginalVsConfig:
    def test_identical_lists_slope_one(self, path_fixture):
        pairs = [_analyzed(path_fixture), _analyzed(cycle_graph(5)), _analyzed(
            build_graph([(1, 2, 3.0), (2, 3, 1.0), (3, 4, 2.0)], n=4)
        )]
        table = compare_original_vs_config(pairs, pairs)
        for metric, slope in table.slopes.items():
            if slope is not None:
                assert slope == 1.0, metric
        assert table.slopes["gap_lfp"] == 1.0

    def test_length_mismatch(self, path_fixture):
        with pytest.raises(LengthMismatchError):
            compare_original_vs_config([_analyzed(path_fixture)], [])

    def test_pairs_recorded(self, path_fixture):
        one = _analyzed(path_fixture)
        table = compare_original_vs_config([one], [one], network_ids=["net"])
        gap_rows = [p for p in table.pairs if p[1] == "gap_lfp"]
        assert gap_rows == [("net", "gap_lfp", one[0].g_lfp, one[0].g_lfp)]
