import json

import pytest
from click.testing import CliRunner

from fpgap.cli import _parse_conditions, main

from helpers import FIXTURE_EDGE_TEXT, FIXTURE_META_TEXT


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fixture_files(tmp_path):
    edge = tmp_path / "fixture.edges"
    meta = tmp_path / "fixture.meta"
    edge.write_text(FIXTURE_EDGE_TEXT)
    meta.write_text(FIXTURE_META_TEXT)
    return edge, meta


def test_parse_conditions():
    assert _parse_conditions("-5..5") == list(range(-5, 6))
    assert _parse_conditions("0") == [0]
    assert _parse_conditions("-3,0,3") == [-3, 0, 3]


class TestAnalyzeCommand:
    def test_human_output(self, runner, fixture_files):
        edge, meta = fixture_files
        result = runner.invoke(
            main, ["analyze", str(edge), "--attrs", str(meta), "--attr-col", "attr"]
        )
        assert result.exit_code == 0, result.output
        assert "consistency: ok" in result.output
        assert "lwafp" in result.output
        assert "fails" in result.output

    def test_json_output_full_precision(self, runner, fixture_files, tmp_path):
        edge, meta = fixture_files
        out = tmp_path / "report.json"
        result = runner.invoke(
            main,
            ["analyze", str(edge), "--attrs", str(meta), "--attr-col", "attr",
             "--json", str(out)],
        )
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["report"]["gaps"]["swafp"]["value"] == -5 / 9
        assert data["report"]["correlations"]["w_a"]["value"] == -1.0

    def test_csv_output(self, runner, fixture_files, tmp_path):
        edge, meta = fixture_files
        out = tmp_path / "report.csv"
        result = runner.invoke(
            main,
            ["analyze", str(edge), "--attrs", str(meta), "--attr-col", "attr",
             "--csv", str(out)],
        )
        assert result.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "kind,name,value,qualifier,zero"
        assert any(line.startswith("gap,lwafp,") and ",fails," in line for line in lines)

    def test_missing_file_exit_1(self, runner):
        result = runner.invoke(main, ["analyze", "/nonexistent/path.edges"])
        assert result.exit_code == 1

    def test_parse_error_exit_1(self, runner, tmp_path):
        bad = tmp_path / "bad.edges"
        bad.write_text("A A 1\n")
        result = runner.invoke(main, ["analyze", str(bad)])
        assert result.exit_code == 1
        assert "self-loop" in result.output

    def test_strict_connected_exit_1(self, runner, tmp_path):
        edge = tmp_path / "two.edges"
        edge.write_text("A B 1\nC D 1\n")
        result = runner.invoke(main, ["analyze", str(edge), "--strict-connected"])
        assert result.exit_code == 1
        assert "not connected" in result.output


class TestSimulateCommand:
    ARGS = ["--n", "70", "--p", "0.08", "--runs", "8", "--conditions", "-1..1", "--seed", "3"]

    def test_outputs_written(self, runner, tmp_path):
        out = tmp_path / "sweep"
        result = runner.invoke(main, ["simulate", *self.ARGS, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert (out / "summary.json").exists()
        assert (out / "conditions.csv").exists()
        assert (out / "scatter.csv").exists()
        summary = json.loads((out / "summary.json").read_text())
        assert summary["runs"] == 8
        assert summary["sign_violations_total"] == 0

    def test_rerun_byte_identical(self, runner, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert runner.invoke(main, ["simulate", *self.ARGS, "--out", str(out1)]).exit_code == 0
        assert runner.invoke(main, ["simulate", *self.ARGS, "--out", str(out2)]).exit_code == 0
        for name in ("summary.json", "conditions.csv", "scatter.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name

    def test_single_condition(self, runner, tmp_path):
        out = tmp_path / "single"
        result = runner.invoke(
            main,
            ["simulate", "--n", "70", "--p", "0.08", "--runs", "6", "--conditions", "0",
             "--seed", "1", "--out", str(out)],
        )
        assert result.exit_code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert [c["condition"] for c in summary["conditions"]] == [0]

    def test_full_scale_respects_explicit_overrides(self, runner, tmp_path):
        # --full-scale only fills in options left at their defaults.
        out = tmp_path / "ps"
        result = runner.invoke(
            main,
            ["simulate", "--full-scale", "--n", "60", "--p", "0.1", "--runs", "4",
             "--conditions", "0", "--seed", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        summary = json.loads((out / "summary.json").read_text())
        assert summary["n"] == 60
        assert summary["runs"] == 4
        assert [c["condition"] for c in summary["conditions"]] == [0]


class TestPipelineCommand:
    def _write_network(self, tmp_path, stem):
        edge = tmp_path / f"{stem}.edges"
        meta = tmp_path / f"{stem}.meta"
        edge.write_text("A B\nA C\nB C\nC D\nD E\nD F\nE F\nB E\n")
        meta.write_text(
            "node gender year\nA F 2005\nB F 2005\nC M 2005\nD M 2006\nE M 2006\nF F 2006\n"
        )
        return edge, meta

    def test_pipeline_outputs(self, runner, tmp_path):
        e0, m0 = self._write_network(tmp_path, "net0")
        e1, m1 = self._write_network(tmp_path, "net1")
        out = tmp_path / "pipe"
        result = runner.invoke(
            main,
            ["pipeline", str(e0), str(m0), str(e1), str(m1),
             "--gender-col", "gender", "--year-col", "year",
             "--config-model", "--seed", "2", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        for name in ("report.json", "scatter.csv", "comparison.csv", "slopes.csv"):
            assert (out / name).exists(), name
        slopes = (out / "slopes.csv").read_text().splitlines()
        assert slopes[0] == "metric,slope"

    def test_odd_file_count_exit_1(self, runner, tmp_path):
        e0, _ = self._write_network(tmp_path, "n0")
        result = runner.invoke(
            main,
            ["pipeline", str(e0), "--gender-col", "g", "--year-col", "y",
             "--out", str(tmp_path / "x")],
        )
        assert result.exit_code == 1

    def test_missing_column_exit_1(self, runner, tmp_path):
        e0, m0 = self._write_network(tmp_path, "n1")
        result = runner.invoke(
            main,
            ["pipeline", str(e0), str(m0), "--gender-col", "nope", "--year-col", "year",
             "--out", str(tmp_path / "y")],
        )
        assert result.exit_code == 1
        assert "nope" in result.output


class TestVerifyCommand:
    def test_pass(self, runner):
        result = runner.invoke(main, ["verify", "--graphs", "4", "--max-n", "15"])
        assert result.exit_code == 0, result.output
        assert "all properties hold" in result.output

    def test_inject_fault_exit_2(self, runner):
        result = runner.invoke(
            main, ["verify", "--graphs", "3", "--max-n", "15", "--inject-fault"]
        )
        assert result.exit_code == 2
        assert "FAIL" in result.output

    def test_json_deterministic(self, runner, tmp_path):
        out1 = tmp_path / "v1.json"
        out2 = tmp_path / "v2.json"
        args = ["verify", "--graphs", "3", "--max-n", "12", "--seed", "5"]
        assert runner.invoke(main, [*args, "--json", str(out1)]).exit_code == 0
        assert runner.invoke(main, [*args, "--json", str(out2)]).exit_code == 0
        assert out1.read_bytes() == out2.read_bytes()
