"""Machine-readable report files: CSV payloads and JSON run manifests.

All CSV payloads use a fixed column order, a header row, and
full-precision scientific notation so that identical runs produce
byte-identical files. Manifests record everything needed to re-run a
command; replaying one must reproduce the CSV payloads exactly
(timestamps excepted).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from rkhs_regress.errors import CsvFormatError
from rkhs_regress.estimators import RegressionSample


def format_float(v: float) -> str:
    """Full-precision scientific notation (17 significant decimals)."""
    return f"{float(v):.17e}"


def format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return str(v)


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row width {len(row)} != header width {len(header)}")
        lines.append(",".join(format_cell(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_samples_csv(path: Path, samples: list[RegressionSample]) -> None:
    write_csv(path, ["x", "y"], [[s.x, s.y] for s in samples])


def read_samples_csv(path: Path) -> list[RegressionSample]:
    """Read a samples CSV with columns x,y; errors name the offending row."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CsvFormatError(f"{path}: file is empty")
    header = [h.strip() for h in lines[0].split(",")]
    if header != ["x", "y"]:
        raise CsvFormatError(f"{path}: expected header 'x,y', got {lines[0]!r}")
    samples = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != 2:
            raise CsvFormatError(f"{path}: line {lineno}: expected 2 columns, got {len(parts)}")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise CsvFormatError(f"{path}: line {lineno}: non-numeric value") from None
        if not (-1.0 <= x <= 1.0):
            raise CsvFormatError(f"{path}: line {lineno}: x={x} outside [-1, 1]")
        if not np.isfinite(y):
            raise CsvFormatError(f"{path}: line {lineno}: y is not finite")
        samples.append(RegressionSample(x, y))
    if not samples:
        raise CsvFormatError(f"{path}: no data rows")
    return samples


@dataclass
class RunManifest:
    """Provenance record of one CLI run.

    ``config`` holds the fully resolved options (every default
    materialized); re-running the manifest reproduces the CSV payloads
    byte for byte. Timestamps are informational and excluded from replay
    comparisons.
    """

    command: str
    config: dict
    library_version: str
    seed: int
    started_at: str
    finished_at: str
    outputs: list[str]

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True) + "\n"


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def write_manifest(path: Path, manifest: RunManifest) -> None:
    Path(path).write_text(manifest.to_json(), encoding="utf-8")


def read_manifest(path: Path) -> RunManifest:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return RunManifest(**data)
