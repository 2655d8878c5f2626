"""Point-cloud input parsing and deterministic JSON output."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .exceptions import InputError
from .geometry import PointCloud


def _parse_csv(text: str, source: str) -> np.ndarray:
    rows, width = [], None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            vals = [float(c) for c in row]
        except ValueError:
            raise InputError(f"{source}:{lineno}: non-numeric value in row {row!r}") from None
        if not all(math.isfinite(v) for v in vals):
            raise InputError(f"{source}:{lineno}: non-finite coordinate")
        if width is None:
            width = len(vals)
        elif len(vals) != width:
            raise InputError(f"{source}:{lineno}: expected {width} columns, got {len(vals)}")
        rows.append(vals)
    if not rows:
        raise InputError(f"{source}: no points")
    return np.array(rows, dtype=float)


def _parse_json(text: str, source: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    pts = data.get("points") if isinstance(data, dict) else None
    if not isinstance(pts, list) or not pts:
        raise InputError(f'{source}: expected an object with a non-empty "points" list')
    width = None
    for k, p in enumerate(pts):
        if not isinstance(p, list) or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p):
            raise InputError(f"{source}: point {k} is not a list of numbers")
        if width is None:
            width = len(p)
        elif len(p) != width:
            raise InputError(f"{source}: point {k} has {len(p)} coordinates, expected {width}")
    arr = np.array(pts, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{source}: non-finite coordinate")
    return arr


def parse_points(text: str, source: str = "<input>", fmt: str | None = None) -> PointCloud:
    """Parse CSV (no header, one point per row) or JSON ``{"points": [...]}``.

    The format is taken from ``fmt`` or sniffed from the first character.
    """
    if fmt is None:
        fmt = "json" if text.lstrip().startswith(("{", "[")) else "csv"
    arr = _parse_csv(text, source) if fmt == "csv" else _parse_json(text, source)
    if arr.shape[1] == 0:
        raise InputError(f"{source}: points have no coordinates")
    return PointCloud(arr)


def read_points(path) -> PointCloud:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    fmt = "json" if path.suffix.lower() == ".json" else None
    return parse_points(text, str(path), fmt)


def read_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None


def format_float(x: float) -> str:
    """17 significant digits; infinities become the string ``"inf"``."""
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    return format(x, ".17g")


def _encode(obj, indent: int, level: int) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json(), indent, level)
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = ", " if not indent else ","
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        # leaf lists of scalars stay on one line
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[" + sep.join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON: insertion-ordered keys, floats as ``.17g``, ``inf`` as a string."""
    return _encode(obj, indent, 0) + "\n"


def write_output(text: str, target: str | None, stdout) -> None:
    if target in (None, "-", "stdout"):
        stdout.write(text)
        return
    try:
        Path(target).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {target}: {exc.strerror}") from None
