from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable

from excursionlab.models import (
    LAYER_BOUND_COLUMNS,
    RECORD_COLUMNS,
    LayerDistanceBounds,
    LilRecord,
)


def write_records(path: Path | str, records: Iterable[LilRecord]) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RECORD_COLUMNS)
        for record in records:
            writer.writerow(record.to_row())
    return path


def read_records(path: Path | str) -> list[LilRecord]:
    with Path(path).open(encoding="utf-8", newline="") as handle:
        return [LilRecord.from_row(row) for row in csv.DictReader(handle)]


def write_layer_bounds(
    path: Path | str, rows: Iterable[tuple[int, LayerDistanceBounds]]
) -> Path:
    """One row per (trial, checkpoint, layer)."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(("trial", *LAYER_BOUND_COLUMNS))
        for trial, bounds in rows:
            writer.writerow((trial, *bounds.to_row()))
    return path


def write_json(path: Path | str, payload: dict[str, Any]) -> Path:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
