"""Command line behavior: exit codes, summary lines, determinism."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from asplens.cli import main

FIXTURES = Path(__file__).parent.parent / "fixtures"
MINI_KB = str(FIXTURES / "mini" / "kb.lp")
MINI_WEIGHTS = str(FIXTURES / "mini" / "weights.lp")
MINI_SPECS = str(FIXTURES / "mini" / "specs")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def model_path(runner, tmp_path):
    out = tmp_path / "model.json"
    result = runner.invoke(main, ["model", MINI_KB, MINI_WEIGHTS, "-o", str(out)])
    assert result.exit_code == 0, result.output
    return str(out)


class TestParse:
    def test_valid_kb(self, runner, tmp_path):
        out = tmp_path / "ast.json"
        result = runner.invoke(main, ["parse", MINI_KB, "-o", str(out)])
        assert result.exit_code == 0
        obj = json.loads(out.read_text())
        assert obj["schema_version"].startswith("asplens.ast/")

    def test_missing_file_exits_2(self, runner):
        result = runner.invoke(main, ["parse", "/no/such/file.lp"])
        assert result.exit_code == 2

    def test_unsupported_construct_warns_but_succeeds(self, runner, tmp_path):
        src = tmp_path / "kb.lp"
        src.write_text("p(1).\n{ choice } :- q.\np(2).\n")
        out = tmp_path / "ast.json"
        result = runner.invoke(main, ["parse", str(src), "-o", str(out)])
        assert result.exit_code == 0
        assert "unsupported" in result.stderr
        assert out.exists()

    def test_parse_error_exits_1(self, runner, tmp_path):
        src = tmp_path / "kb.lp"
        src.write_text("p(1. broken\n")
        result = runner.invoke(main, ["parse", str(src)])
        assert result.exit_code == 1
        assert "error" in result.stderr


class TestModel:
    def test_summary_line(self, runner, tmp_path):
        out = tmp_path / "model.json"
        result = runner.invoke(main, ["model", MINI_KB, MINI_WEIGHTS, "-o", str(out)])
        assert result.exit_code == 0
        assert result.output.splitlines()[-1].startswith("soft=20 hard=10 features=")

    def test_empty_kb(self, runner, tmp_path):
        src = tmp_path / "empty.lp"
        src.write_text("")
        result = runner.invoke(main, ["model", str(src)])
        assert result.exit_code == 0
        assert "soft=0 hard=0" in result.output

    def test_weights_optional(self, runner, tmp_path):
        out = tmp_path / "model.json"
        result = runner.invoke(main, ["model", MINI_KB, "-o", str(out)])
        assert result.exit_code == 0
        obj = json.loads(out.read_text())
        assert all(c["weight"] is None for c in obj["constraints"])


class TestLayout:
    def test_soft_layout_has_twenty_placements(self, runner, model_path, tmp_path):
        out = tmp_path / "layout.json"
        result = runner.invoke(main, ["layout", model_path, "--type", "soft",
                                      "-o", str(out)])
        assert result.exit_code == 0
        obj = json.loads(out.read_text())
        assert len(obj["constraints"]) == 20
        assert obj["type"] == "soft"

    def test_hard_layout(self, runner, model_path, tmp_path):
        out = tmp_path / "layout.json"
        result = runner.invoke(main, ["layout", model_path, "--type", "hard",
                                      "-o", str(out)])
        assert result.exit_code == 0
        assert len(json.loads(out.read_text())["constraints"]) == 10

    def test_min_degree_exhausts_features(self, runner, model_path, tmp_path):
        out = tmp_path / "layout.json"
        result = runner.invoke(main, ["layout", model_path, "--min-degree", "999",
                                      "-o", str(out)])
        assert result.exit_code == 0
        obj = json.loads(out.read_text())
        assert obj["features"] == []
        assert len(obj["constraints"]) == 20

    def test_svg_output(self, runner, model_path, tmp_path):
        out = tmp_path / "layout.svg"
        result = runner.invoke(main, ["layout", model_path, "--out", "svg",
                                      "-o", str(out)])
        assert result.exit_code == 0
        assert out.read_text().startswith("<svg")

    def test_bad_type_is_usage_error(self, runner, model_path):
        result = runner.invoke(main, ["layout", model_path, "--type", "mushy"])
        assert result.exit_code == 2

    def test_bad_feature_kind_is_usage_error(self, runner, model_path):
        result = runner.invoke(main, ["layout", model_path, "--features", "colors"])
        assert result.exit_code == 2


class TestEval:
    def test_ranked_reports(self, runner, model_path, tmp_path):
        out = tmp_path / "reports.json"
        result = runner.invoke(main, ["eval", model_path, MINI_SPECS, "-o", str(out)])
        assert result.exit_code == 0
        obj = json.loads(out.read_text())
        assert [r["spec"] for r in obj["reports"]] == ["a", "b", "c"]
        assert [r["cost"] for r in obj["reports"]] == [30, 30, 32]

    def test_empty_dir(self, runner, model_path, tmp_path):
        specs = tmp_path / "specs"
        specs.mkdir()
        out = tmp_path / "reports.json"
        result = runner.invoke(main, ["eval", model_path, str(specs), "-o", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["reports"] == []

    def test_missing_dir_exits_2(self, runner, model_path):
        result = runner.invoke(main, ["eval", model_path, "/no/such/dir"])
        assert result.exit_code == 2

    def test_hard_violation_ranks_last(self, runner, model_path, tmp_path):
        specs = tmp_path / "specs"
        specs.mkdir()
        (specs / "ok.lp").write_text("mark(point).\n")
        (specs / "bad.lp").write_text(
            "mark(point).\nchannel(e0,x).\nfield(e0,f).\ntype(e0,quantitative).\n"
            "log(e0).\nzero(e0).\n"
        )
        out = tmp_path / "reports.json"
        result = runner.invoke(main, ["eval", model_path, str(specs), "-o", str(out)])
        assert result.exit_code == 0
        reports = json.loads(out.read_text())["reports"]
        assert reports[-1]["spec"] == "bad"
        assert reports[-1]["ill_formed"] is True


class TestDeterminism:
    def test_repeated_runs_identical(self, runner, model_path, tmp_path):
        for args, name in [
            (["model", MINI_KB, MINI_WEIGHTS], "model.json"),
            (["layout", model_path], "layout.json"),
            (["layout", model_path, "--out", "svg"], "layout.svg"),
            (["eval", model_path, MINI_SPECS], "reports.json"),
        ]:
            outputs = []
            for i in range(3):
                out = tmp_path / f"{i}-{name}"
                result = runner.invoke(main, args + ["-o", str(out)])
                assert result.exit_code == 0
                outputs.append(out.read_bytes())
            assert outputs[0] == outputs[1] == outputs[2]
