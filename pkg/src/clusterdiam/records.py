"""Run records: one JSON object per benchmark invocation.

Records are append-only JSON lines with sorted keys so identical runs are
byte-identical except for the volatile fields (timestamp and wall-clock
times; any key named "timestamp", "wall_time", or "time" is treated as
volatile).  ``canonical_line`` nulls the volatile fields, which is what
reproducibility checks compare.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable

SCHEMA = "clusterdiam/run-v1"

COMPARE_CSV_HEADER = ["algo", "seed", "approx_ratio", "time", "rounds", "work"]

_VOLATILE_KEYS = ("timestamp", "wall_time", "time")

__all__ = [
    "RunRecord",
    "SCHEMA",
    "COMPARE_CSV_HEADER",
    "append_record",
    "read_records",
    "canonical_line",
    "write_compare_csv",
]


@dataclass
class RunRecord:
    command: str
    graph: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    metrics: dict[str, Any] | None = None
    results: dict[str, Any] = field(default_factory=dict)
    oracle: dict[str, Any] | None = None
    schema: str = SCHEMA
    version: str = "0.1.0"
    timestamp: str = ""

    def __post_init__(self) -> None:
        if not self.timestamp:
            self.timestamp = time.strftime("%Y-%m-%dT%H:%M:%S%z")

    def to_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def append_record(path: str | Path, record: RunRecord) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(record.to_line() + "\n")


def read_records(path: str | Path) -> list[dict]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


def _null_volatile(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {
            k: (None if k in _VOLATILE_KEYS else _null_volatile(v)) for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_null_volatile(v) for v in obj]
    return obj


def canonical_line(record: dict | RunRecord) -> str:
    """Serialized record with volatile fields nulled; equal runs produce
    byte-identical canonical lines."""
    data = asdict(record) if isinstance(record, RunRecord) else record
    return json.dumps(_null_volatile(data), sort_keys=True, separators=(",", ":"))


def write_compare_csv(path: str | Path, rows: Iterable[dict[str, Any]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=COMPARE_CSV_HEADER)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k) for k in COMPARE_CSV_HEADER})
