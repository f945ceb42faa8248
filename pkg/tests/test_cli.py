# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import argparse
import csv
import json
from fractions import Fraction

import pytest

from qaw_verify.cli import SEED_VARIABLE, RunConfig, get_census, main, parse_rational

EVAL_ARGS = ["eval", "--n", "2", "--a", "1/2", "1/3", "1/5", "2/7", "--q", "1/3"]


def _args(**overrides):
    values = dict(seed=3, n_max=4, envs=5, out=".", format="json")
    values.update(overrides)
    return argparse.Namespace(**values)


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(seed=-1)
    with pytest.raises(ValueError):
        RunConfig(n_max=-1)
    with pytest.raises(ValueError):
        RunConfig(envs_per_check=0)
    with pytest.raises(ValueError):
        RunConfig(format="xml")


def test_seed_override():
    assert RunConfig.from_args(_args(), {}).seed == 3
    assert RunConfig.from_args(_args(), {SEED_VARIABLE: "11"}).seed == 11
    with pytest.raises(ValueError):
        RunConfig.from_args(_args(), {SEED_VARIABLE: "eleven"})


def test_run_record_names_templates():
    record = RunConfig(seed=2, n_max=3, envs_per_check=4).run_record()
    assert record["seed"] == 2
    assert record["nmax"] == 3
    assert len(record["templates"]) == 64


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -2 ") == -2
    for text in ("0.5", "1/", "a/b", ""):
        with pytest.raises(ValueError):
            parse_rational(text)


def test_unknown_census():
    with pytest.raises(ValueError):
        get_census("s7")


def test_eval_at_zero_degree(capsys):
    assert main(["eval", "--n", "0", "--a", "1/2", "1/3", "1/5", "2/7", "--t", "2", "--q", "1/3"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_eval_check_residual(capsys):
    assert main(EVAL_ARGS + ["--t", "2", "--rep", "D4", "--check"]) == 0
    value, residual = capsys.readouterr().out.split()
    assert Fraction(residual) == 0
    assert Fraction(value) != 0


def test_eval_symmetric_in_t(capsys):
    assert main(EVAL_ARGS + ["--t", "3"]) == 0
    forward = capsys.readouterr().out
    assert main(EVAL_ARGS + ["--t", "1/3"]) == 0
    assert capsys.readouterr().out == forward


def test_eval_rejects_bad_input(capsys):
    assert main(EVAL_ARGS + ["--t", "0.5"]) == 2
    assert main(EVAL_ARGS + ["--t", "2", "--rep", "D9"]) == 2
    assert main(EVAL_ARGS + ["--t", "2", "--order", "1,1,2,3"]) == 2
    assert capsys.readouterr().err


def test_census_s6_csv(tmp_path):
    assert main(["census", "s6", "--format", "csv", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "census_s6.csv") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["source_class", "target_class", "count"]
    assert sum(int(count) for _, _, count in rows[1:]) == 720


def test_census_s6_json(tmp_path):
    assert main(["census", "s6", "--out", str(tmp_path), "--seed", "5"]) == 0
    with open(tmp_path / "census_s6.json") as f:
        record = json.load(f)
    assert record["census"] == "s6"
    assert record["run"]["seed"] == 5
    assert record["deltas"] == []
    assert not list(tmp_path.glob("*.tmp"))


def test_census_rejects_dot(tmp_path):
    assert main(["census", "s6", "--format", "dot", "--out", str(tmp_path)]) == 2


def test_graph_is_deterministic(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    assert main(["graph", "fig3", "--out", str(first)]) == 0
    assert main(["graph", "fig3", "--out", str(second)]) == 0
    text = (first / "fig3.dot").read_text()
    assert text.startswith("digraph fig3 {")
    assert text == (second / "fig3.dot").read_text()


def test_verify_rejects_bad_catalog(tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text("{not json")
    assert main(["verify", "--catalog", str(path), "--out", str(tmp_path)]) == 2
    path.write_text('{"id": "x"}')
    assert main(["verify", "--catalog", str(path), "--out", str(tmp_path)]) == 2
    assert not (tmp_path / "verify.json").exists()


def test_census_wd5_reports_known_deviations(tmp_path, capsys):
    assert main(["census", "wd5", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "census_wd5.json") as f:
        record = json.load(f)
    assert record["deltas"] == []
    assert len(record["known_deviations"]) == 3
    assert {"source_class": "cor3.5a.2", "target_class": "cor3.5a.7", "count": 360} in record["tabulated"]
    assert "known deviation" in capsys.readouterr().err


def test_census_values(tmp_path):
    assert main(["census", "s6", "--values", "--envs", "1", "--n-max", "2", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "census_s6.json") as f:
        record = json.load(f)
    assert record["value_failures"] == []
    assert main(["census", "watson", "--values", "--out", str(tmp_path)]) == 2


def test_graph_has_no_format_option(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["graph", "fig3", "--format", "csv", "--out", str(tmp_path)])
    assert e.value.code == 2
