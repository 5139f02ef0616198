"""CSV and JSON tables with the configuration header."""

from __future__ import annotations

import io
import json

import pandas as pd
import pytest
import yaml

from edge_transition.errors import ParameterError
from edge_transition.reports import render_frame, write_output

CONFIG = {"subcommand": "scan", "order": 2, "nus": [100.0, 200.0]}


@pytest.fixture()
def frame():
    return pd.DataFrame({"nu": [100.0, 200.0], "max_residual": [1.5e-3, 4e-4]})


def test_csv_has_a_comment_header(frame):
    text = render_frame(frame, CONFIG, "csv")
    header = [line[2:] for line in text.splitlines() if line.startswith("# ")]
    assert yaml.safe_load("\n".join(header)) == CONFIG
    table = pd.read_csv(io.StringIO(text), comment="#")
    assert list(table.columns) == ["nu", "max_residual"]
    assert table["max_residual"].tolist() == pytest.approx([1.5e-3, 4e-4])


def test_json_holds_config_and_rows(frame):
    document = json.loads(render_frame(frame, CONFIG, "json"))
    assert document["config"] == CONFIG
    assert document["rows"][1] == {"nu": 200.0, "max_residual": pytest.approx(4e-4)}


def test_other_formats_are_rejected(frame):
    with pytest.raises(ParameterError):
        render_frame(frame, CONFIG, "latex")


def test_write_to_file(tmp_path):
    out = tmp_path / "nested" / "table.csv"
    write_output("a,b\n", out)
    assert out.read_text(encoding="utf-8") == "a,b\n"


def test_write_to_stdout(capsys):
    write_output("hello\n", None)
    assert capsys.readouterr().out == "hello\n"
