import json
from pathlib import Path
from typing import Any, Optional

import click
import numpy as np
import pandas as pd

from .md2html import markdown_table, markdown_to_html

FLOAT_FORMAT = "%.17g"


def _plain(value: Any) -> Any:
    """Python scalar for JSON: numpy scalars unwrapped, NaN and None become null."""
    if isinstance(value, np.generic):
        value = value.item()
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return None
    return value


def to_csv(table: pd.DataFrame) -> str:
    return table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def to_json(table: pd.DataFrame) -> str:
    """``{"columns": [...], "rows": [[...], ...]}``; floats keep their shortest round-trip repr."""
    rows = [[_plain(value) for value in row] for row in table.itertuples(index=False, name=None)]
    return json.dumps({"columns": [str(c) for c in table.columns], "rows": rows}, indent=1) + "\n"


def from_json(text: str) -> pd.DataFrame:
    payload = json.loads(text)
    return pd.DataFrame(payload["rows"], columns=payload["columns"])


def render(table: pd.DataFrame, fmt: str, title: str = "") -> str:
    """Serialize ``table`` as csv, json, markdown or html."""
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    if fmt == "markdown":
        return markdown_table(table, title)
    if fmt == "html":
        return markdown_to_html(markdown_table(table, title), title)
    raise ValueError(f"unknown output format {fmt!r}")


def write_output(text: str, out: Optional[Path] = None):
    if out is None:
        click.echo(text, nl=False)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
