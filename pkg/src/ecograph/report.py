"""Diff-friendly JSON report writing.

Reports use a fixed field order and floats rounded to 12 significant
digits so that identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def round12(value):
    """Recursively round floats to 12 significant digits."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round12(v) for v in value]
    return value


def canonical_json(data) -> str:
    return json.dumps(round12(data), indent=2, sort_keys=False, allow_nan=False)


def config_hash(data) -> str:
    """Stable hash over the report-defining inputs."""
    payload = json.dumps(round12(data), sort_keys=True, allow_nan=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def write_report(data, path: str | Path) -> None:
    Path(path).write_text(canonical_json(data) + "\n", encoding="utf-8")
