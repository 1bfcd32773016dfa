from fractions import Fraction

import numpy as np
import pytest

from fpgap.errors import SizeLimitExceededError
from fpgap.graph import build_graph, from_arrays, node_quantities
from fpgap.metrics import full_report, gap_lefp, gap_sefp
from fpgap.oracle import oracle_exact, oracle_list_gap, oracle_singular_gap

from helpers import cycle_graph, random_small_graph, star_graph

FIXTURE_EXACT = {
    "lfp": Fraction(1, 6),
    "sfp": Fraction(1, 3),
    "lwfp": Fraction(1, 3),
    "swfp": Fraction(5, 9),
    "lafp": Fraction(-1, 4),
    "safp": Fraction(-1, 2),
    "lwafp": Fraction(-1, 3),
    "swafp": Fraction(-5, 9),
}


class TestHandEnumerations:
    """Values checked against literal list materialization by hand:
    fixture concatenated weighted list with a=w is [3,1,2,2,3,3]."""

    def test_list_weighted_a_equals_w(self, path_fixture):
        w = node_quantities(path_fixture).weighted_degree
        assert oracle_list_gap(path_fixture, w, weighted=True) == pytest.approx(
            7 / 3 - 2, abs=1e-15
        )

    def test_list_weighted_with_attributes(self, path_fixture):
        # lists: A:[0], B:[2,1,1], C:[0,0] -> mean 2/3, minus mean(a)=1
        got = oracle_list_gap(path_fixture, path_fixture.attributes, weighted=True)
        assert got == pytest.approx(2 / 3 - 1, abs=1e-15)

    def test_singular_weighted_a_equals_w(self, path_fixture):
        w = node_quantities(path_fixture).weighted_degree
        # node means [3, 5/3, 3] -> average 23/9, minus 2
        got = oracle_singular_gap(path_fixture, w, weighted=True)
        assert got == pytest.approx(23 / 9 - 2, abs=1e-15)

    def test_singular_unweighted_with_attributes(self, path_fixture):
        # node means [0, 3/2, 0] -> 1/2, minus 1
        got = oracle_singular_gap(path_fixture, path_fixture.attributes, weighted=False)
        assert got == pytest.approx(-0.5, abs=1e-15)

    def test_regular_graph_a_equals_d_is_zero(self):
        g = cycle_graph(5)
        d = node_quantities(g).degree.astype(float)
        assert oracle_list_gap(g, d, weighted=False) == 0.0
        assert oracle_singular_gap(g, d, weighted=False) == 0.0

    def test_two_node_equal_attributes(self):
        g = build_graph([(1, 2, 3.0)], n=2)
        assert oracle_singular_gap(g, [4.0, 4.0], weighted=True) == 0.0


class TestOracleExact:
    def test_fixture_rationals(self, path_fixture):
        assert oracle_exact(path_fixture) == FIXTURE_EXACT

    def test_unit_cycle_all_zero(self):
        values = oracle_exact(cycle_graph(4))
        assert all(v == 0 for v in values.values())

    def test_star_lfp(self):
        values = oracle_exact(star_graph(3))
        assert values["lfp"] == Fraction(1, 2)
        assert values["sfp"] == Fraction(1)

    def test_size_limit(self):
        n = 101
        u = np.arange(n - 1, dtype=np.int64)
        v = u + 1
        g = from_arrays(n, u, v, np.ones(n - 1))
        with pytest.raises(SizeLimitExceededError):
            oracle_exact(g)

    def test_rejects_real_weights(self, path_fixture):
        g = path_fixture.with_weights(np.array([1.5, 2.0]))
        with pytest.raises(ValueError):
            oracle_exact(g)


class TestListGapLimits:
    def test_n_limit(self):
        n = 10_001
        u = np.arange(n - 1, dtype=np.int64)
        v = u + 1
        g = from_arrays(n, u, v, np.ones(n - 1))
        with pytest.raises(SizeLimitExceededError):
            oracle_list_gap(g, np.zeros(n), weighted=False)

    def test_replication_limit(self):
        g = build_graph([(1, 2, 5_000_000.0)], n=2)
        with pytest.raises(SizeLimitExceededError):
            oracle_list_gap(g, [1.0, 2.0], weighted=True)


class TestOracleAgainstClosedForms:
    def test_real_weights_weighted_mean_generalization(self):
        g = build_graph([(1, 2, 0.5), (2, 3, 1.25), (1, 3, 2.75)], n=3)
        q = node_quantities(g)
        a = np.array([1.0, -2.0, 0.5])
        assert oracle_list_gap(g, a, weighted=True) == pytest.approx(
            gap_lefp(g, q, a), rel=1e-12
        )
        assert oracle_singular_gap(g, a, weighted=True) == pytest.approx(
            gap_sefp(g, q, a), rel=1e-12
        )

    def test_random_graphs_exact_agreement(self):
        done = 0
        for seed in range(60):
            g = random_small_graph(seed, max_n=20)
            if g is None:
                continue
            report = full_report(g)
            exact = oracle_exact(g)
            for name, value in exact.items():
                assert report.value(name) == float(value), (seed, name)
            done += 1
        assert done >= 30
