"""Deterministic output rendering: 12-significant-digit floats, canonical JSON,
CSV with a resolved-config comment line, LF endings everywhere."""

import json
import math
from typing import Any


def fmt_float(x: float) -> str:
    """Fixed 12-significant-digit decimal form, locale independent."""
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if x == 0:
        return "0"
    return format(float(x), ".12g")


def round12(x: float) -> float:
    """Float rounded to 12 significant digits (idempotent)."""
    if not math.isfinite(x):
        return x
    return float(fmt_float(x))


def _canon(obj: Any) -> Any:
    """Recursively round floats and strip non-JSON values (nan/inf -> null)."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return round12(obj) if math.isfinite(obj) else None
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    """Single-line JSON with sorted keys and rounded floats."""
    return json.dumps(_canon(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)


def json_document(obj: Any) -> str:
    """Pretty JSON document (sorted keys, rounded floats), trailing newline."""
    return json.dumps(_canon(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    if isinstance(value, int):
        return str(value)
    return str(value)


def csv_document(
    config: dict,
    header: list[str],
    rows: list[list],
    trailing_comments: list[str] | None = None,
) -> str:
    """CSV with `# resolved-config: <json>` first, then header, rows, comments."""
    lines = ["# resolved-config: " + canonical_json(config)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    for comment in trailing_comments or []:
        lines.append("# " + comment)
    return "\n".join(lines) + "\n"


def flatten(payload: dict, prefix: str = "") -> list[tuple[str, Any]]:
    """Dotted-key leaves of a nested dict, sorted, for key-value CSV views."""
    items: list[tuple[str, Any]] = []
    for key in sorted(payload):
        value = payload[key]
        path = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(flatten(value, path + "."))
        elif isinstance(value, (list, tuple)):
            for i, v in enumerate(value):
                if isinstance(v, dict):
                    items.extend(flatten(v, f"{path}[{i}]."))
                else:
                    items.append((f"{path}[{i}]", v))
        else:
            items.append((path, value))
    return items
