"""Writing result tables and documents with their configuration header."""

from __future__ import annotations

import json
import logging
import sys
from typing import TYPE_CHECKING, Any

from edge_transition.errors import ParameterError
from edge_transition.expansion.emit import header_lines

if TYPE_CHECKING:
    from pathlib import Path

    import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12e"


def frame_to_csv(frame: pd.DataFrame, config: dict[str, Any]) -> str:
    """CSV text preceded by the configuration as `# ` comment lines."""
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return header_lines(config, "# ") + body


def write_output(text: str, out: Path | None) -> None:
    """Write text to `out`, or to standard output when no path is given."""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("wrote %s", out)


def frame_to_json(frame: pd.DataFrame, config: dict[str, Any]) -> str:
    """{"config": ..., "rows": [...]} with one object per row."""
    rows = json.loads(frame.to_json(orient="records", double_precision=15))
    return json.dumps({"config": config, "rows": rows}, indent=2) + "\n"


def render_frame(frame: pd.DataFrame, config: dict[str, Any], fmt: str) -> str:
    """Table as CSV or JSON.

    Raises:
        ParameterError: any other format
    """
    if fmt == "csv":
        return frame_to_csv(frame, config)
    if fmt == "json":
        return frame_to_json(frame, config)
    raise ParameterError(f"tables are written as csv or json, not {fmt}")
