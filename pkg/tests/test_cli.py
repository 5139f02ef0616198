"""The edge-transition command line and its exit codes."""

from __future__ import annotations

import io
import json
import os

import pandas as pd
import pytest

from edge_transition import cli
from edge_transition.errors import PrecisionExhaustedError
from edge_transition.expansion import assemble_kernel_expansion
from edge_transition.fredholm import TransitionReport


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    for key in list(os.environ):
        if key.startswith("EDGE_TRANSITION_"):
            monkeypatch.delenv(key)


def _read_table(path):
    return pd.read_csv(path, comment="#")


def test_help():
    assert cli.main(["--help"]) == 0


def test_derive_json(tmp_path):
    out = tmp_path / "k.json"
    assert cli.main(["derive", "--order", "1", "--out", str(out)]) == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    config = document.pop("config")
    assert config["subcommand"] == "derive"
    assert config["format"] == "json"
    assert config["order"] == 1
    assert document == assemble_kernel_expansion(1).to_json()


def test_derive_latex_with_anchors(capsys):
    assert cli.main(["derive", "--order", "1", "--format", "latex", "--anchors"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("% ")
    assert "\\begin{align*}" in text
    assert "\\frac{5\\sqrt{2}}{24}" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["derive", "--format", "csv"],
        ["derive", "--order", "0"],
        ["derive", "--order", "abc"],
        ["derive", "--branch", "sideways"],
        ["derive", "--order", "3", "--branch", "printed"],
        ["derive", "--colour", "blue"],
        ["fredholm", "e2", "--nu", "2"],
        ["fredholm", "F", "--t", "11"],
        ["verify", "transition", "--nu", "50,100"],
        ["scan", "--nu", "100,200", "--m", "1"],
    ],
)
def test_bad_arguments_exit_with_4(argv):
    assert cli.main(argv) == 4


def test_config_file(tmp_path):
    config_file = tmp_path / "run.yaml"
    config_file.write_text("order: 1\nbranch: printed\n", encoding="utf-8")
    out = tmp_path / "k.json"
    assert cli.main(["derive", "--config", str(config_file), "--out", str(out)]) == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["order"] == 1
    assert document["branch"] == "printed"


def test_scan_writes_a_table(tmp_path):
    out = tmp_path / "scan.csv"
    argv = ["scan", "--m", "1", "--nu", "100,200,400", "--grid", "0:1:2,-1:0:2"]
    assert cli.main([*argv, "--precision-bits", "128", "--out", str(out)]) == 0
    table = _read_table(out)
    assert list(table.columns) == ["nu", "h", "m", "max_residual", "slope"]
    assert len(table) == 6
    assert "# subcommand: scan" in out.read_text(encoding="utf-8")


@pytest.mark.parametrize(("slopes", "code"), [({0: 1.05, 1: 1.98}, 0), ({0: 1.0, 1: 2.4}, 2)])
def test_verify_kernel_judges_the_slopes(monkeypatch, slopes, code):
    monkeypatch.setattr(cli, "_scan", lambda config: slopes)
    assert cli.main(["verify", "kernel", "--m", "1", "--nu", "100,200,400"]) == code


def _report(slope):
    return TransitionReport(-1.0, [50.0, 100.0, 200.0], [0.1, 0.06, 0.04], [0.8, 0.81, 0.815], 0.82, [0.02, 0.01, 0.005], slope)


@pytest.mark.parametrize(("slope", "code"), [(1.0, 0), (0.5, 2), (None, 2)])
def test_verify_transition_judges_the_slope(monkeypatch, tmp_path, slope, code):
    monkeypatch.setattr(cli, "transition_study", lambda t, nus, n: _report(slope))
    out = tmp_path / "transition.csv"
    assert cli.main(["verify", "transition", "--t", "-1", "--nu", "50,100,200", "--out", str(out)]) == code
    assert len(_read_table(out)) == 3


def test_fredholm_f_json(capsys):
    assert cli.main(["fredholm", "F", "--t", "-2", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    (row,) = document["rows"]
    assert row["quantity"] == "F"
    assert row["value"] == pytest.approx(0.413224, abs=1e-4)
    assert row["n_nodes"] == 40


def test_environment_supplies_flags(monkeypatch, capsys):
    monkeypatch.setenv("EDGE_TRANSITION_T", "-2")
    monkeypatch.setenv("EDGE_TRANSITION_NODES", "30")
    assert cli.main(["--log-level", "debug", "fredholm", "F"]) == 0
    table = pd.read_csv(io.StringIO(capsys.readouterr().out), comment="#")
    assert table["t"].iloc[0] == -2.0
    assert table["n_nodes"].iloc[0] == 30


def test_fredholm_e2_rows(tmp_path):
    out = tmp_path / "e2.csv"
    assert cli.main(["fredholm", "e2", "--s", "4", "--nu", "2,3", "--out", str(out)]) == 0
    table = _read_table(out)
    assert table["nu"].tolist() == [2.0, 3.0]
    assert (table["value"] > 0).all()
    assert table["value"].iloc[1] > table["value"].iloc[0]


def test_precision_exhausted_exits_with_3(monkeypatch, capsys):
    def fail(t, n):
        raise PrecisionExhaustedError("F not resolved", suggested_bits=512)

    monkeypatch.setattr(cli, "tracy_widom_F", fail)
    assert cli.main(["fredholm", "F"]) == 3
    assert "retry with at least 512 bits" in capsys.readouterr().err


@pytest.mark.slow()
def test_verify_parametrix(tmp_path):
    out = tmp_path / "parametrix.csv"
    assert cli.main(["verify", "parametrix", "--precision-bits", "128", "--seed", "3", "--out", str(out)]) == 0
    table = _read_table(out)
    assert set(table["check"]) == {"det", "jump", "asymptotic", "asymptotic_slope"}
    assert (table.loc[table["check"] == "jump", "value"] < 1e-10).all()


@pytest.mark.slow()
def test_derive_fourth_order(tmp_path):
    out = tmp_path / "k4.json"
    assert cli.main(["derive", "--order", "4", "--out", str(out)]) == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["order"] == 4
    assert document["branch"] == "principal"
    assert {term["j"] for term in document["terms"]} == {1, 2, 3, 4}
