"""Tabular study results and deterministic CSV emission.

A ``StudyReport`` is a small ordered bundle of equal-length columns plus
string metadata. CSV output is byte-deterministic: metadata lines are
``# key=value`` comments in insertion order, floats are rendered with 17
significant digits (round-trip exact for IEEE doubles), rows end with ``\\n``
and the decimal separator is always ``.`` regardless of locale.

Undefined numeric entries (for example the first pairwise order in a
refinement table) are carried as NaN and rendered as ``nan``; infinities are
rejected at construction because they would signal an unflagged solver
failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

import numpy as np

__all__ = ["StudyReport", "emit_csv", "read_csv"]


@dataclass
class StudyReport:
    """Labeled columns of equal length plus run metadata."""

    columns: dict[str, list]
    metadata: dict[str, str] = dataclass_field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.columns:
            raise ValueError("report needs at least one column")
        lengths = {name: len(col) for name, col in self.columns.items()}
        if len(set(lengths.values())) > 1:
            raise ValueError(f"column lengths differ: {lengths}")
        clean: dict[str, list] = {}
        for name, col in self.columns.items():
            if "," in name or "\n" in name:
                raise ValueError(f"column name {name!r} must not contain ',' or newlines")
            out = []
            for v in col:
                if isinstance(v, str):
                    if "," in v or "\n" in v:
                        raise ValueError(f"cell {v!r} must not contain ',' or newlines")
                    out.append(v)
                else:
                    v = float(v)
                    if math.isinf(v):
                        raise ValueError(f"column {name!r} contains an infinity")
                    out.append(v)
            clean[name] = out
        self.columns = clean
        for key, value in self.metadata.items():
            if any(c in key or c in str(value) for c in ("\n", "=")):
                raise ValueError(f"metadata entry {key!r} must not contain '=' or newlines")
        self.metadata = {k: str(v) for k, v in self.metadata.items()}

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.columns.values())))


def _render(value) -> str:
    if isinstance(value, str):
        return value
    return f"{value:.17g}"


def emit_csv(report: StudyReport, path) -> Path:
    """Write a report to ``path``; returns the path written.

    Raises:
        OSError: on I/O failure, with the path in the message.
    """
    path = Path(path)
    lines = [f"# {k}={v}\n" for k, v in report.metadata.items()]
    lines.append(",".join(report.columns) + "\n")
    cols = list(report.columns.values())
    for row in zip(*cols):
        lines.append(",".join(_render(v) for v in row) + "\n")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.writelines(lines)
    except OSError as exc:
        raise OSError(f"failed to write {path}: {exc}") from exc
    return path


def read_csv(path) -> StudyReport:
    """Parse a file written by :func:`emit_csv` back into a report."""
    path = Path(path)
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list] = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("# "):
                key, _, value = line[2:].partition("=")
                metadata[key] = value
                continue
            cells = line.split(",")
            if header is None:
                header = cells
                continue
            parsed = []
            for cell in cells:
                try:
                    parsed.append(float(cell))
                except ValueError:
                    parsed.append(cell)
            rows.append(parsed)
    if header is None:
        raise ValueError(f"{path} has no header row")
    columns: dict[str, list] = {name: [] for name in header}
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"{path}: row width {len(row)} != header width {len(header)}")
        for name, value in zip(header, row):
            columns[name].append(value)
    return StudyReport(columns, metadata)
