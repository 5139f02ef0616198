"""Run configuration shared by every command.

Values are resolved in the order: command-line flag, environment variable
`EDGE_TRANSITION_<FIELD>`, YAML file given with `--config`, defaults below.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from edge_transition.errors import ParameterError
from edge_transition.expansion.riemann_hilbert import BranchConvention
from edge_transition.fredholm.determinant import DEFAULT_NODES
from edge_transition.kernels.residuals import DEFAULT_EPSILON, DEFAULT_GRID
from edge_transition.specfun.context import DEFAULT_PRECISION_BITS

if TYPE_CHECKING:
    from collections.abc import Mapping

logger = logging.getLogger(__name__)

ENV_PREFIX = "EDGE_TRANSITION_"
DEFAULT_NUS = (50.0, 100.0, 200.0, 400.0)
FLAG_ALIASES = {"nu": "nus"}

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
Format = Literal["json", "latex", "csv"]


def parse_nu_list(value: Any) -> list[float]:
    """"50,100,200" or a sequence of numbers as a list of floats."""
    if isinstance(value, str):
        items: list[Any] = [part.strip() for part in value.split(",") if part.strip()]
    elif isinstance(value, int | float):
        items = [value]
    else:
        items = list(value)
    try:
        return [float(item) for item in items]
    except (TypeError, ValueError) as err:
        raise ParameterError(f"nu list {value!r} is not a comma-separated list of numbers") from err


class RunConfig(BaseModel):
    """Every parameter of a run; serialized into the header of each output file."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    subcommand: str
    order: int = Field(default=2, ge=1)
    nus: list[float] = Field(default_factory=lambda: list(DEFAULT_NUS), min_length=1)
    t: float = 0.0
    s: float | None = Field(default=None, gt=0)
    m: int = Field(default=2, ge=0)
    grid: str = DEFAULT_GRID
    precision_bits: int = Field(default=DEFAULT_PRECISION_BITS, ge=64)
    format: Format = "csv"
    out: Path | None = None
    seed: int = 0
    branch: BranchConvention = BranchConvention.PRINCIPAL
    log_level: LogLevel = "WARNING"
    nodes: int = Field(default=DEFAULT_NODES, ge=2, le=200)
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0, lt=1)
    anchors: bool = False

    @field_validator("nus", mode="before")
    @classmethod
    def _split_nus(cls, value: Any) -> list[float]:
        nus = parse_nu_list(value)
        if any(nu < 0 for nu in nus):
            raise ValueError("nu values must be nonnegative")
        return nus

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper(cls, value: Any) -> Any:
        return value.upper() if isinstance(value, str) else value

    @field_validator("format", "branch", mode="before")
    @classmethod
    def _lower(cls, value: Any) -> Any:
        return value.lower() if isinstance(value, str) else value

    def to_header(self) -> dict[str, Any]:
        """Plain mapping of every field, in a form YAML and JSON can hold."""
        return self.model_dump(mode="json")


def read_config_file(path: Path) -> dict[str, Any]:
    """Mapping stored in a YAML file."""
    try:
        content = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as err:
        raise ParameterError(f"cannot read config file {path}: {err}") from err
    except yaml.YAMLError as err:
        raise ParameterError(f"config file {path} is not valid YAML: {err}") from err
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ParameterError(f"config file {path} does not hold a mapping")
    return content


def environment_overrides(environ: Mapping[str, str] | None = None) -> dict[str, str]:
    """Fields set through EDGE_TRANSITION_<FIELD> variables; EDGE_TRANSITION_NU sets the nu list."""
    environ = os.environ if environ is None else environ
    fields = set(RunConfig.model_fields) - {"subcommand"}
    found = {}
    for key, value in environ.items():
        if key.startswith(ENV_PREFIX):
            name = key.removeprefix(ENV_PREFIX).lower()
            name = FLAG_ALIASES.get(name, name)
            if name in fields:
                found[name] = value
    return found


def load_config(
    subcommand: str,
    flags: Mapping[str, Any],
    config_file: Path | None = None,
    environ: Mapping[str, str] | None = None,
    defaults: Mapping[str, Any] | None = None,
) -> RunConfig:
    """Merge defaults, config file, environment and flags; flags set to None are ignored.

    `defaults` replaces the model defaults for one command, below every other source.

    Raises:
        ParameterError: unreadable config file, unknown key or invalid value
    """
    merged: dict[str, Any] = dict(defaults or {})
    if config_file is not None:
        merged.update(read_config_file(config_file))
    merged.update(environment_overrides(environ))
    merged.update({key: value for key, value in flags.items() if value is not None})
    merged["subcommand"] = subcommand
    try:
        config = RunConfig(**merged)
    except ValidationError as err:
        raise ParameterError(f"invalid configuration: {err}") from err
    logger.debug("configuration for %s: %s", subcommand, config.to_header())
    return config
