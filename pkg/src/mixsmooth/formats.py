"""File formats: the GridFunction container and CSV/JSON reports.

GridFunction container
    One UTF-8 JSON header line terminated by ``\\n``::

        {"format": "mixsmooth-gridfunction", "version": 1, "d": 2,
         "n": [64, 64], "period": [12.56, 12.56], "layout": "row-major",
         "dtype": "complex128-le-interleaved"}

    followed by ``prod(n)`` complex samples as little-endian float64 pairs
    ``(re, im)`` in row-major (C) order over ``x_1, ..., x_d``.

Reports
    JSON: UTF-8, sorted keys, floats rounded to 12 significant digits, a
    ``schema_version`` field and a ``timestamp`` field that comparisons
    ignore. CSV: header row, comma separator, ``.`` decimal point.
"""
from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
import sys
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .grid import Grid, GridFunction

__all__ = [
    "FormatError",
    "SCHEMA_VERSION",
    "write_gridfunction",
    "read_gridfunction",
    "round_sig",
    "clean",
    "dumps_report",
    "write_report",
    "rows_to_csv",
    "strip_volatile",
]

MAGIC = "mixsmooth-gridfunction"
VERSION = 1
DTYPE = "complex128-le-interleaved"
SCHEMA_VERSION = 1


class FormatError(ValueError):
    """A file does not follow the documented layout."""


def write_gridfunction(path, f: GridFunction) -> None:
    header = {
        "format": MAGIC,
        "version": VERSION,
        "d": f.grid.d,
        "n": list(f.grid.n),
        "period": list(f.grid.period),
        "layout": "row-major",
        "dtype": DTYPE,
    }
    data = np.ascontiguousarray(f.samples, dtype="<c16").tobytes()
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode() + b"\n")
        fh.write(data)


def read_gridfunction(path) -> GridFunction:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    line, sep, body = raw.partition(b"\n")
    if not sep:
        raise FormatError("missing header line")
    try:
        header = json.loads(line.decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != MAGIC:
        raise FormatError("not a GridFunction container")
    if header.get("version") != VERSION:
        raise FormatError(f"unsupported version {header.get('version')!r}")
    if header.get("layout") != "row-major" or header.get("dtype") != DTYPE:
        raise FormatError("unsupported layout or dtype")
    try:
        grid = Grid(tuple(header["n"]), tuple(header["period"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad grid description: {exc}") from exc
    if header.get("d") != grid.d:
        raise FormatError("header d does not match n")
    expected = int(np.prod(grid.n)) * 16
    if len(body) != expected:
        raise FormatError(f"expected {expected} data bytes, found {len(body)}")
    samples = np.frombuffer(body, dtype="<c16").reshape(grid.shape)
    try:
        return GridFunction(grid, samples.astype(complex))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def round_sig(x: float, digits: int = 12) -> float:
    return float(f"{x:.{digits}g}")


def clean(obj):
    """Recursively convert to JSON-ready values with 12 significant digits."""
    if isinstance(obj, Mapping):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return round_sig(x)
    return obj


def dumps_report(payload: Mapping, kind: str) -> str:
    body = dict(clean(payload))
    body["schema_version"] = SCHEMA_VERSION
    body["report"] = kind
    body["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def strip_volatile(text: str) -> dict:
    """Parse a JSON report and drop the timestamp, for comparisons."""
    body = json.loads(text)
    body.pop("timestamp", None)
    return body


def _cell(v) -> str:
    v = clean(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return ""
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    return str(v)


def rows_to_csv(rows: Iterable[Mapping], columns: list | None = None) -> str:
    rows = list(rows)
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def write_report(text: str, out=None) -> None:
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
