"""
Table ingestion.

CSV: one table row per line, comma-separated numbers. An optional header
line carries column labels; an optional first column carries row labels
(detected by a non-numeric first cell).

JSON: {"counts": [[...]]} or {"probs": [[...]]} with optional "row_labels",
"col_labels", "values_x", "values_y", "sample_size" and "samples"
({"xs": [...], "ys": [...]}). A measure report is accepted as well; its
embedded "table" object is re-read.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from ..spec.schemas import SchemaRegistry, SchemaValidationError
from .table import PROB_TOLERANCE, JointTable, TableError, from_counts, from_probs

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
KINDS = ("counts", "probs")


class TableFormatError(TableError):
    pass


@dataclass(frozen=True)
class TableSource:
    """
    A parsed input file.

    Attributes:
        table: The normalized joint table
        kind: "counts" or "probs", as read
        sample_size: Count total (or declared sample size), if known
        values_x: Numeric support of X, if supplied
        values_y: Numeric support of Y, if supplied
        samples: Paired observations (xs, ys), if supplied
        path: Source path
        fmt: "csv" or "json"
    """
    table: JointTable
    kind: str
    sample_size: Optional[int] = None
    values_x: Optional[tuple[float, ...]] = None
    values_y: Optional[tuple[float, ...]] = None
    samples: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None
    path: Optional[Path] = None
    fmt: str = "json"

    def table_payload(self) -> dict[str, Any]:
        """Normalized table plus supports, as embedded in reports."""
        payload = self.table.to_dict()
        if self.values_x is not None:
            payload["values_x"] = list(self.values_x)
        if self.values_y is not None:
            payload["values_y"] = list(self.values_y)
        if self.sample_size is not None:
            payload["sample_size"] = self.sample_size
        if self.samples is not None:
            payload["samples"] = {"xs": list(self.samples[0]), "ys": list(self.samples[1])}
        return payload


def detect_format(path: Path) -> str:
    suffix = path.suffix.lower().lstrip(".")
    if suffix in FORMATS:
        return suffix
    raise TableFormatError(f"Cannot infer format from {path.name!r}; pass --format.")


def read_table(path: Path, fmt: Optional[str] = None, kind: Optional[str] = None) -> TableSource:
    """
    Read a table file.

    Args:
        path: Input file
        fmt: "csv" or "json" (default: from the file suffix)
        kind: "counts" or "probs" for CSV input (default: probabilities if
            the entries sum to 1, counts otherwise). JSON declares its kind.

    Raises:
        TableFormatError: If the file cannot be parsed
        TableError: If the parsed matrix is not a valid joint table
    """
    fmt = fmt or detect_format(path)
    if fmt not in FORMATS:
        raise TableFormatError(f"Unsupported format: {fmt}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableFormatError(f"Cannot read {path}: {exc}") from exc
    if fmt == "csv":
        source = parse_csv(text, kind=kind)
    else:
        source = parse_json(text)
    logger.debug("read %s table %s from %s", source.kind, source.table.shape, path)
    return TableSource(
        table=source.table,
        kind=source.kind,
        sample_size=source.sample_size,
        values_x=source.values_x,
        values_y=source.values_y,
        samples=source.samples,
        path=path,
        fmt=fmt,
    )


# ============ CSV ============


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _is_corner(cell: str) -> bool:
    return not cell or "\\" in cell or "/" in cell


def _is_header(rows: list[list[str]]) -> bool:
    first = rows[0]
    if any(not _is_number(cell) for cell in first[1:]):
        return True
    if len(first) == 1:
        return not _is_number(first[0])
    # Numeric column labels: a corner cell such as x\y or "" over labelled rows.
    return _is_corner(first[0]) and len(rows) > 1 and all(not _is_number(row[0]) for row in rows[1:])


def parse_csv(text: str, kind: Optional[str] = None) -> TableSource:
    """
    Parse a CSV matrix with an optional header row and label column.

    The first row is a header when it holds a non-numeric column label, or
    when its first cell is empty or a corner label such as ``x\\y`` and the
    rows below it start with row labels.
    """
    rows = [[cell.strip() for cell in row] for row in csv.reader(text.splitlines())]
    rows = [row for row in rows if any(row)]
    if not rows:
        raise TableFormatError("CSV input is empty.")

    header: Optional[list[str]] = None
    if _is_header(rows):
        header, rows = rows[0], rows[1:]
    if not rows:
        raise TableFormatError("CSV input has a header but no data rows.")

    row_labels: Optional[list[str]] = None
    if not _is_number(rows[0][0]):
        row_labels = [row[0] for row in rows]
        rows = [row[1:] for row in rows]

    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise TableFormatError("CSV rows have unequal lengths.")
    try:
        values = np.array([[float(cell) for cell in row] for row in rows], dtype=float)
    except ValueError as exc:
        raise TableFormatError(f"Non-numeric CSV cell: {exc}") from exc

    col_labels: Optional[list[str]] = None
    if header is not None:
        col_labels = header[1:] if len(header) == width + 1 else header
        if len(col_labels) != width:
            raise TableFormatError(f"Header has {len(header)} labels for {width} columns.")

    return _build(values, kind or _guess_kind(values), row_labels, col_labels)


def _guess_kind(values: np.ndarray) -> str:
    if abs(math.fsum(values.ravel()) - 1.0) <= PROB_TOLERANCE:
        return "probs"
    return "counts"


# ============ JSON ============


def parse_json(text: str, registry: Optional[SchemaRegistry] = None) -> TableSource:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"Invalid JSON: {exc}") from exc
    if isinstance(payload, dict) and isinstance(payload.get("table"), dict):
        payload = payload["table"]
    registry = registry or SchemaRegistry.default()
    try:
        registry.validate_instance(payload, "table.input.schema.json")
    except SchemaValidationError as exc:
        raise TableFormatError("; ".join([str(exc), *exc.errors])) from exc

    kind = "counts" if "counts" in payload else "probs"
    rows = payload[kind]
    if any(len(row) != len(rows[0]) for row in rows):
        raise TableFormatError("Table rows have unequal lengths.")
    values = np.asarray(rows, dtype=float)
    source = _build(values, kind, payload.get("row_labels"), payload.get("col_labels"))

    sample_size = payload.get("sample_size", source.sample_size)
    samples = None
    if "samples" in payload:
        xs, ys = payload["samples"]["xs"], payload["samples"]["ys"]
        samples = (tuple(float(v) for v in xs), tuple(float(v) for v in ys))
    return TableSource(
        table=source.table,
        kind=kind,
        sample_size=sample_size,
        values_x=_support(payload.get("values_x")),
        values_y=_support(payload.get("values_y")),
        samples=samples,
    )


def _support(values: Optional[Sequence[float]]) -> Optional[tuple[float, ...]]:
    if values is None:
        return None
    return tuple(float(v) for v in values)


def _build(
    values: np.ndarray,
    kind: str,
    row_labels: Optional[Sequence[str]],
    col_labels: Optional[Sequence[str]],
) -> TableSource:
    if kind not in KINDS:
        raise TableFormatError(f"Unknown table kind: {kind}")
    if kind == "counts":
        table = from_counts(values, row_labels=row_labels, col_labels=col_labels)
        total = math.fsum(values.ravel())
        sample_size = int(round(total)) if abs(total - round(total)) < 1e-9 else None
        return TableSource(table=table, kind=kind, sample_size=sample_size)
    return TableSource(table=from_probs(values, row_labels=row_labels, col_labels=col_labels), kind=kind)
