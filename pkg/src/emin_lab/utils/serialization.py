# src/emin_lab/utils/serialization.py
"""
On-disk formats: complex matrices as JSON, experiment records as CSV, and the
run manifest that lists every emitted file with its checksum.

Matrix JSON is row-major:
    {"rows": n, "cols": m, "data": [[re, im], ...]}
"""

import csv
import json
from dataclasses import asdict
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from emin_lab.config import CSV_FLOAT_FORMAT, MANIFEST_FILENAME
from emin_lab.core.errors import ParseError
from emin_lab.core.models import ComplexMatrix, RunManifest
from emin_lab.utils.log import get_logger
from emin_lab.utils.utility import file_checksum, format_float

log = get_logger(__name__)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def matrix_to_dict(m) -> dict:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {arr.shape}")
    flat = arr.reshape(-1)
    return {
        "rows": int(arr.shape[0]),
        "cols": int(arr.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def write_matrix(path: str | Path, m) -> Path:
    path = Path(path)
    path.write_text(json.dumps(matrix_to_dict(m)) + "\n", encoding="utf-8")
    return path


def parse_matrix(text: str, source: str = "<input>") -> ComplexMatrix:
    """
    Parse matrix JSON text.

    Raises:
        ParseError: malformed JSON (with line/column/offset) or a payload whose
            shape or entries do not match the declared rows/cols.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, source=source, line=e.lineno, column=e.colno, offset=e.pos) from e

    if not isinstance(payload, dict):
        raise ParseError("top-level value must be an object", source=source)
    missing = [k for k in ("rows", "cols", "data") if k not in payload]
    if missing:
        raise ParseError(f"missing key(s) {missing}", source=source)

    rows, cols, data = payload["rows"], payload["cols"], payload["data"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ParseError(f"rows/cols must be positive integers, got {rows!r} x {cols!r}", source=source)
    if not isinstance(data, list) or len(data) != rows * cols:
        count = len(data) if isinstance(data, list) else "non-list"
        raise ParseError(f"expected {rows * cols} entries in 'data', got {count}", source=source)

    out = np.empty(rows * cols, dtype=np.complex128)
    for k, entry in enumerate(data):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
        ):
            raise ParseError(
                f"entry {k} (row {k // cols}, col {k % cols}) must be [re, im], got {entry!r}",
                source=source,
                offset=k,
            )
        out[k] = complex(entry[0], entry[1])
    return out.reshape(rows, cols)


def read_matrix(path: str | Path) -> ComplexMatrix:
    path = Path(path)
    return parse_matrix(path.read_text(encoding="utf-8"), source=str(path))


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def _write_rows(f: TextIO, columns: Sequence[str], rows: Iterable[Sequence], float_format: str) -> int:
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(columns)
    count = 0
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"Row has {len(row)} fields, header has {len(columns)}")
        writer.writerow([format_float(v, float_format) for v in row])
        count += 1
    return count


def write_csv(
    target: str | Path | TextIO,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    float_format: str = CSV_FLOAT_FORMAT,
) -> int:
    """
    Write rows under a fixed header to a path or an open text stream. Floats use
    `float_format`, ints are written as-is, so identical inputs give
    byte-identical files. Returns the row count.
    """
    if hasattr(target, "write"):
        return _write_rows(target, columns, rows, float_format)
    with open(target, "w", encoding="utf-8", newline="") as f:
        count = _write_rows(f, columns, rows, float_format)
    log.debug("Wrote %d rows to %s", count, target)
    return count


def read_csv_rows(path: str | Path) -> tuple[list[str], list[list[str]]]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        return header, [row for row in reader]


# ---------------------------------------------------------------------------
# Manifest
# ---------------------------------------------------------------------------

def write_manifest(out_dir: str | Path, manifest: RunManifest, files: Sequence[str | Path]) -> Path:
    """Checksum every file in `files` into the manifest and write it to out_dir."""
    out_dir = Path(out_dir)
    for f in files:
        f = Path(f)
        manifest.files[f.name] = file_checksum(f)
    path = out_dir / MANIFEST_FILENAME
    path.write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_manifest(path: str | Path) -> RunManifest:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return RunManifest(**payload)
