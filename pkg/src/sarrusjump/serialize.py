"""Deterministic CSV/JSON emission: fixed 12-significant-digit floats,
non-finite values serialised as null, no timestamps."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np


def fmt(value) -> str:
    """Canonical 12-significant-digit text for one cell."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.12g}"


def round12(obj):
    """Recursively round floats to 12 significant digits; NaN/inf to None."""
    if isinstance(obj, dict):
        return {key: round12(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round12(val) for val in obj]
    if isinstance(obj, np.ndarray):
        return [round12(val) for val in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return float(f"{value:.12g}")
    return obj


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(json.dumps(round12(obj), indent=2, allow_nan=False) + "\n")
    return path
