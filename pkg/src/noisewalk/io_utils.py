"""Canonical serialization: deterministic JSON and locale-free CSV.

Dataset files must be byte-identical across reruns of the same config, so
JSON is emitted with sorted keys and floats at 17 significant digits, and
CSV floats use ``repr`` (shortest round-trip, always '.' decimal).
"""

from __future__ import annotations

import hashlib
import math
from pathlib import Path


def _format_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number in canonical JSON: {value}")
        return f"{value:.17g}"
    raise TypeError(f"unsupported scalar {type(value)}")


def canonical_dumps(obj, indent: int = 0) -> str:
    """Serialize to deterministic JSON text."""
    import json

    if isinstance(obj, dict):
        items = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError("JSON object keys must be strings")
            items.append(json.dumps(key) + ": " + canonical_dumps(obj[key]))
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(canonical_dumps(v) for v in obj) + "]"
    if isinstance(obj, str):
        return json.dumps(obj)
    return _format_scalar(obj)


def write_json(path, obj) -> None:
    Path(path).write_text(canonical_dumps(obj) + "\n")


def read_json(path):
    import json

    return json.loads(Path(path).read_text())


def config_hash(config_dict: dict) -> str:
    """Hash of the semantic config fields (sha256 of canonical JSON)."""
    return hashlib.sha256(canonical_dumps(config_dict).encode()).hexdigest()


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if not math.isfinite(value):
            return ""
        return repr(value)
    return str(value)


def write_csv(path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")
