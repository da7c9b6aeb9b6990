"""CSV ingestion and report writers."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, ParseError

SCHEMA_VERSION = 1

_INF_TOKENS = {"inf": math.inf, "+inf": math.inf, "-inf": -math.inf}


@dataclass
class Dataset:
    columns: dict[str, np.ndarray]
    source: str = "<stdin>"

    @property
    def n_rows(self) -> int:
        return next(iter(self.columns.values())).shape[0] if self.columns else 0

    def column(self, name: str) -> np.ndarray:
        return self.columns[name]


def parse_cell(text: str, row: int, column: str) -> float:
    token = text.strip()
    if not token:
        raise ParseError(f"row {row}, column {column!r}: empty field", row, column)
    lowered = token.lower()
    if lowered in _INF_TOKENS:
        return _INF_TOKENS[lowered]
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"row {row}, column {column!r}: not a number: {text!r}", row, column) from None
    if not math.isfinite(value):
        # rejects nan and spellings like "infinity" outside the accepted tokens
        raise ParseError(f"row {row}, column {column!r}: unsupported value {text!r}", row, column)
    return value


def read_csv(handle, source: str = "<stream>") -> Dataset:
    reader = csv.reader(handle, strict=True)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError(f"{source}: empty file, expected a header row", 0) from None
    except csv.Error as exc:
        raise FormatError(f"{source}: {exc}", 0) from None
    names = [h.strip() for h in header]
    if len(set(names)) != len(names):
        raise FormatError(f"{source}: duplicate column names in header", 0)
    if any(not name for name in names):
        raise FormatError(f"{source}: empty column name in header", 0)
    values: list[list[float]] = [[] for _ in names]
    row = 0
    try:
        for row, record in enumerate(reader, start=1):
            if not record:
                continue  # blank line
            if len(record) != len(names):
                raise FormatError(
                    f"{source}: row {row} has {len(record)} fields, header has {len(names)}", row
                )
            for j, cell in enumerate(record):
                values[j].append(parse_cell(cell, row, names[j]))
    except csv.Error as exc:
        raise FormatError(f"{source}: row {row + 1}: {exc}", row + 1) from None
    return Dataset({name: np.array(col, dtype=np.float64) for name, col in zip(names, values)}, source)


def load_csv(path) -> Dataset:
    """Load a header-first CSV of numeric columns; ``"-"`` reads standard input."""
    if str(path) == "-":
        return read_csv(sys.stdin, "<stdin>")
    with open(path, newline="", encoding="utf-8") as fh:
        return read_csv(fh, str(path))


def _format_float(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(v))


def write_csv(dataset: Dataset, handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    names = list(dataset.columns)
    writer.writerow(names)
    cols = [dataset.columns[name] for name in names]
    for i in range(dataset.n_rows):
        writer.writerow([_format_float(c[i]) for c in cols])


def write_rows(handle, header: list[str], rows) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_float(v) if isinstance(v, float) else v for v in row])


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    return obj


def dump_json(payload: dict, handle) -> None:
    """Write a schema-versioned JSON report. Non-finite floats become ``"inf"``/``"-inf"``/null."""
    doc = {"schema_version": SCHEMA_VERSION, **_jsonable(payload)}
    json.dump(doc, handle, indent=2, allow_nan=False)
    handle.write("\n")


def dumps_json(payload: dict) -> str:
    buf = io.StringIO()
    dump_json(payload, buf)
    return buf.getvalue()
