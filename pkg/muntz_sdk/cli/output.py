"""Deterministic rendering of reports as JSON, CSV or an aligned table.

Identical reports render to identical bytes: JSON keys are sorted, floats carry
17 significant digits and fractions are written as "p/q" strings.
"""

import csv
import io
import json
import logging
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors.exceptions import InputRejectedError


logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


class CommandResult(BaseModel):
    """What a subcommand produced.

    `payload` is rendered as JSON; `rows`, when present, are the records written
    by the CSV and table formats. Without rows the payload becomes a single record.
    """

    payload: Any
    rows: Optional[List[Any]] = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def format_float(value: float) -> str:
    """17 significant digits; integral values keep a trailing `.0`."""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    text = format(value, ".17g")
    if not any(marker in text for marker in ".en"):
        text += ".0"
    return text


def to_plain(value: Any) -> Any:
    """Reduce a report to dicts, lists, strings, bools, ints, floats and None."""
    if isinstance(value, BaseModel):
        return to_plain(value.model_dump(by_alias=True, exclude_none=True))
    if isinstance(value, Enum):
        return to_plain(value.value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {str(key): to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item) for item in value]
    return value


def _scalar(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isfinite(value):
            return format_float(value)
        return json.dumps(format_float(value))
    if isinstance(value, int):
        return str(value)
    return json.dumps(value)


def _json(value: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(key)}: {_json(value[key], depth + 1)}" for key in sorted(value)]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, list):
        if not value:
            return "[]"
        items = [f"{inner}{_json(item, depth + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return _scalar(value)


def render_json(payload: Any) -> str:
    return _json(to_plain(payload), 0) + "\n"


def _compact(value: Any) -> str:
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(key)}:{_compact(value[key])}" for key in sorted(value)) + "}"
    if isinstance(value, list):
        return "[" + ",".join(_compact(item) for item in value) + "]"
    return _scalar(value)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return _compact(value)


def _records(result: CommandResult) -> List[Dict[str, Any]]:
    source: Sequence[Any] = result.rows if result.rows is not None else [result.payload]
    records = [to_plain(row) for row in source]
    for record in records:
        if not isinstance(record, dict):
            raise InputRejectedError("This report has no tabular form; use --format json")
    return records


def _columns(records: List[Dict[str, Any]]) -> List[str]:
    columns: List[str] = []
    for record in records:
        columns.extend(key for key in record if key not in columns)
    return columns


def render_csv(result: CommandResult) -> str:
    records = _records(result)
    columns = _columns(records)
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_cell(record.get(column)) for column in columns])
    return buffer.getvalue()


def render_table(result: CommandResult) -> str:
    records = _records(result)
    columns = _columns(records)
    cells = [columns] + [[_cell(record.get(column)) for column in columns] for record in records]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def render(result: CommandResult, output_format: OutputFormat) -> str:
    if output_format == OutputFormat.CSV:
        return render_csv(result)
    if output_format == OutputFormat.TABLE:
        return render_table(result)
    return render_json(result.payload)


def write_report(text: str, path: Optional[Path], stream: TextIO) -> None:
    """Write to `path` when given, to `stream` otherwise.

    Raises:
        InputRejectedError: If the file cannot be written.
    """
    if path is None:
        stream.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputRejectedError(f"Failed to write report: {e}", details={"output": str(path)}, cause=e)
    logger.info(f"Wrote report to {path}")
