"""Command-line behavior: output formats, exit codes, flag coverage."""

from __future__ import annotations

import json
import re

import pytest

from fcmkit import fixtures, persistence
from fcmkit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfer:
    def test_inline_input_winner_thyroid(self, capsys):
        code, out, _ = run_cli(
            capsys, "infer", "fcm1_initial",
            "--input", "0,0,0.6,0.8,0.7,0.3,0.7,0.3,0.3", "--rule", "source-sum",
        )
        assert code == 0
        assert "Winner: Thyroid" in out
        assert re.search(r"Diabetes\s+0\.\d{5}\n", out)  # 5-decimal values

    def test_symptom_fixture_winner_diabetes(self, capsys):
        code, out, _ = run_cli(
            capsys, "infer", "fcm1_trained",
            "--symptoms", "diabetes_ideal", "--rule", "rescaled", "--clamp", "zero-indegree",
        )
        assert code == 0
        assert "Winner: Diabetes" in out

    def test_missing_model_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "infer", "no_such_model", "--input", "0,0")
        assert code == 1
        assert "no model" in err

    def test_budget_exhaustion_exits_2(self, capsys):
        code, out, _ = run_cli(
            capsys, "infer", "fcm1_initial",
            "--input", "0,0,0.6,0.8,0.7,0.3,0.7,0.3,0.3", "--max-iters", "2",
        )
        assert code == 2
        assert "max-iterations" in out

    def test_trace_written(self, capsys, tmp_path):
        trace_path = tmp_path / "trace.csv"
        code, _, _ = run_cli(
            capsys, "infer", "fcm1_trained", "--symptoms", "diabetes_ideal",
            "--trace", str(trace_path),
        )
        assert code == 0
        labels, rows = persistence.read_trace(trace_path.read_text())
        assert labels == fixtures.model("fcm1_trained").labels
        assert len(rows) >= 2

    def test_json_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "infer", "fcm1_trained", "--symptoms", "thyroid_ideal", "--json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["winner"]["label"] == "Thyroid"
        assert payload["status"] == "converged"

    def test_stdin_symptoms(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"Fatigue": 0.9})))
        code, out, _ = run_cli(capsys, "infer", "fcm1_trained", "--symptoms", "-")
        assert code == 0
        assert "Winner:" in out

    def test_unknown_symptom_warns(self, capsys, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"Fatigue": 0.5, "Fever": 0.9}))
        code, _, err = run_cli(capsys, "infer", "fcm1_trained", "--symptoms", str(path))
        assert code == 0
        assert "Fever" in err

    def test_csv_symptom_file(self, capsys, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("symptom,severity\nFatigue,0.9\nTrembling,0.2\n")
        code, out, _ = run_cli(capsys, "infer", "fcm1_trained", "--symptoms", str(path))
        assert code == 0
        assert "Winner:" in out

    def test_help_lists_every_rule_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["infer", "--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for flag in ("--rule", "--lambda", "--epsilon", "--max-iters", "--scope",
                     "--clamp", "--include-diagonal"):
            assert flag in out

    def test_usage_error_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["infer", "fcm1_initial"])  # neither --input nor --symptoms
        assert exc.value.code == 1


class TestClassify:
    def test_diabetes_path(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "cascade", "--symptoms", "diabetes_ideal")
        assert code == 0
        assert "fcm1: winner Diabetes" in out
        assert "Diagnosis:" in out

    def test_thyroid_path(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "cascade", "--symptoms", "thyroid_ideal")
        assert code == 0
        assert "fcm1: winner Thyroid" in out
        assert "fcm3" in out

    def test_empty_symptoms_ambiguous(self, capsys, tmp_path):
        path = tmp_path / "none.json"
        path.write_text("{}")
        code, out, _ = run_cli(capsys, "classify", "cascade", "--symptoms", str(path))
        assert code == 0
        assert "[ambiguous]" in out

    def test_bias_flag(self, capsys, tmp_path):
        path = tmp_path / "none.json"
        path.write_text("{}")
        code, out, _ = run_cli(
            capsys, "classify", "cascade", "--symptoms", str(path), "--bias", "Thyroid=0.9"
        )
        assert code == 0
        assert "fcm1: winner Thyroid" in out

    def test_bad_bias_exits_1(self, capsys, tmp_path):
        path = tmp_path / "none.json"
        path.write_text("{}")
        code, _, err = run_cli(
            capsys, "classify", "cascade", "--symptoms", str(path), "--bias", "Fatigue=0.9"
        )
        assert code == 1
        assert "Fatigue" in err

    def test_nonconvergent_exits_2_with_partial_path(self, capsys, tmp_path):
        fixtures.export_fixtures(str(tmp_path))
        doc = json.loads((tmp_path / "cascade.json").read_text())
        doc["nodes"]["fcm1"]["rule_overrides"] = {"max_iterations": 1}
        broken = tmp_path / "broken.json"
        broken.write_text(json.dumps(doc))
        code, out, _ = run_cli(
            capsys, "classify", str(broken), "--symptoms", "diabetes_ideal"
        )
        assert code == 2
        assert "did not converge" in out

    def test_json_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "cascade", "--symptoms", "thyroid_ideal", "--json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["steps"][0]["winner"] == "Thyroid"
        assert payload["status"] == "complete"


class TestTrain:
    def test_trained_model_classifies_both_exemplars(self, capsys, tmp_path):
        out_path = tmp_path / "trained.json"
        code, _, _ = run_cli(
            capsys, "train", "fcm1_initial",
            "--exemplar", "Diabetes=diabetes_ideal",
            "--exemplar", "Thyroid=thyroid_ideal",
            "-o", str(out_path),
        )
        assert code == 0
        for symptoms, expected in (("diabetes_ideal", "Diabetes"), ("thyroid_ideal", "Thyroid")):
            code, out, _ = run_cli(capsys, "infer", str(out_path), "--symptoms", symptoms)
            assert code == 0
            assert f"Winner: {expected}" in out

    def test_bad_exemplar_spec_exits_1(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "train", "fcm1_initial", "--exemplar", "nonsense",
            "-o", str(tmp_path / "x.json"),
        )
        assert code == 1
        assert "LABEL=VALUE" in err


class TestEvaluate:
    def test_demo_dataset_accuracy_line_format(self, capsys, tmp_path):
        fixtures.export_fixtures(str(tmp_path))
        code, out, _ = run_cli(
            capsys, "evaluate", "fcm1_trained", "--dataset", str(tmp_path / "demo_cases.csv")
        )
        assert code == 0
        assert re.search(r"^Accuracy =\d+/\d+= \d+\.\d{4} %$", out, re.MULTILINE)
        assert re.search(r"^Error =\d+/\d+= \d+\.\d{4} %$", out, re.MULTILINE)

    def test_unknown_label_exits_1(self, capsys, tmp_path):
        dataset = tmp_path / "bad.csv"
        dataset.write_text("Fatigue,label\n0.5,Lupus\n")
        code, _, err = run_cli(capsys, "evaluate", "fcm1_trained", "--dataset", str(dataset))
        assert code == 1
        assert "Lupus" in err

    def test_hierarchy_target(self, capsys, tmp_path):
        dataset = tmp_path / "cases.csv"
        cases = [
            {**fixtures.symptom_set("diabetes_ideal"), **fixtures.symptom_set("type1_ideal")},
        ]
        header = list(cases[0]) + ["label"]
        lines = [",".join(header)]
        lines.append(",".join([str(cases[0][k]) for k in cases[0]] + ["Type 1 Diabetes"]))
        dataset.write_text("\n".join(lines) + "\n")
        code, out, _ = run_cli(capsys, "evaluate", "cascade", "--dataset", str(dataset))
        assert code == 0
        assert "Accuracy =1/1= 100.0000 %" in out

    def test_json_output(self, capsys, tmp_path):
        fixtures.export_fixtures(str(tmp_path))
        code, out, _ = run_cli(
            capsys, "evaluate", "fcm1_trained", "--dataset", str(tmp_path / "demo_cases.csv"),
            "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["labels"] == ["Diabetes", "Thyroid"]
        assert payload["total"] == 22


class TestFixturesCommand:
    def test_list_names_everything(self, capsys):
        code, out, _ = run_cli(capsys, "fixtures", "list")
        assert code == 0
        for name in fixtures.MODEL_NAMES:
            assert name in out
        assert "cascade" in out
        assert "diabetes_ideal" in out

    def test_export_writes_loadable_files(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "fixtures", "export", str(tmp_path))
        assert code == 0
        model = persistence.load_model((tmp_path / "fcm3_trained.json").read_text())
        assert model.n == 10
