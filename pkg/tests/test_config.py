"""Configuration layering: defaults, YAML file, environment, flags."""

from __future__ import annotations

import pytest

from edge_transition.config import environment_overrides, load_config, parse_nu_list, read_config_file
from edge_transition.errors import ParameterError
from edge_transition.expansion.riemann_hilbert import BranchConvention


def test_parse_nu_list():
    assert parse_nu_list("50, 100,200") == [50.0, 100.0, 200.0]
    assert parse_nu_list(7) == [7.0]
    assert parse_nu_list([1, "2.5"]) == [1.0, 2.5]
    with pytest.raises(ParameterError):
        parse_nu_list("50,abc")


def test_defaults():
    config = load_config("scan", {}, environ={})
    assert config.order == 2
    assert config.nus == [50.0, 100.0, 200.0, 400.0]
    assert config.precision_bits == 256
    assert config.grid == "-2:6:9,-2:6:9"
    assert config.branch is BranchConvention.PRINCIPAL
    assert config.format == "csv"


def test_command_defaults_sit_below_everything():
    config = load_config("derive", {}, environ={}, defaults={"format": "json"})
    assert config.format == "json"
    config = load_config("derive", {"format": "latex"}, environ={}, defaults={"format": "json"})
    assert config.format == "latex"


def test_precedence(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("order: 3\nm: 1\nseed: 11\n", encoding="utf-8")
    environ = {"EDGE_TRANSITION_M": "0", "EDGE_TRANSITION_SEED": "5", "OTHER_SEED": "9"}
    config = load_config("scan", {"seed": 2, "t": None}, config_file=path, environ=environ)
    assert config.order == 3
    assert config.m == 0
    assert config.seed == 2
    assert config.t == 0.0


def test_environment_overrides():
    environ = {"EDGE_TRANSITION_NU": "10,20", "EDGE_TRANSITION_UNKNOWN": "1", "EDGE_TRANSITION_SUBCOMMAND": "x"}
    assert environment_overrides(environ) == {"nus": "10,20"}
    assert load_config("scan", {}, environ=environ).nus == [10.0, 20.0]


def test_case_insensitive_choices():
    config = load_config("scan", {"log_level": "debug", "branch": "PRINTED", "format": "JSON"}, environ={})
    assert config.log_level == "DEBUG"
    assert config.branch is BranchConvention.PRINTED
    assert config.format == "json"


@pytest.mark.parametrize(
    "flags",
    [
        {"order": 0},
        {"precision_bits": 32},
        {"nus": "-1,2"},
        {"s": 0},
        {"epsilon": 1.0},
        {"format": "xml"},
        {"nodes": 1000},
    ],
)
def test_invalid_values(flags):
    with pytest.raises(ParameterError):
        load_config("scan", flags, environ={})


def test_unknown_key_in_file(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("colour: blue\n", encoding="utf-8")
    with pytest.raises(ParameterError):
        load_config("scan", {}, config_file=path, environ={})


def test_config_file_errors(tmp_path):
    with pytest.raises(ParameterError):
        read_config_file(tmp_path / "missing.yaml")
    broken = tmp_path / "broken.yaml"
    broken.write_text("order: [1,\n", encoding="utf-8")
    with pytest.raises(ParameterError):
        read_config_file(broken)
    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ParameterError):
        read_config_file(listing)
    empty = tmp_path / "empty.yaml"
    empty.write_text("", encoding="utf-8")
    assert read_config_file(empty) == {}


def test_header_is_plain_data(tmp_path):
    config = load_config("scan", {"out": tmp_path / "r.csv"}, environ={})
    header = config.to_header()
    assert header["subcommand"] == "scan"
    assert header["branch"] == "principal"
    assert header["out"] == str(tmp_path / "r.csv")
