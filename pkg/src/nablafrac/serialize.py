"""Reading and writing grid functions, kernels and reports.

Grid functions travel as CSV rows ``t,value`` or as JSON ``{"base", "values"}``.
Reports are JSON with every float written to 17 significant digits, so two
runs on the same inputs give byte-identical output.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .calculus import GridFunction
from .errors import ParseError, ShapeMismatch
from .greens import GreensKernel


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    return format(x, ".17g")


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def grid_to_json(u: GridFunction) -> dict:
    return {"base": u.base, "values": [float(v) for v in u.values]}


def grid_to_csv(u: GridFunction) -> str:
    return "".join(f"{t},{format_float(v)}\n" for t, v in zip(u.points(), u.values))


def kernel_to_json(kernel: GreensKernel) -> dict:
    return {
        "kind": kernel.kind,
        "a": kernel.domain.a,
        "b": kernel.domain.b,
        "alpha": kernel.alpha,
        "entries": [[float(x) for x in row] for row in kernel.entries],
    }


def kernel_to_csv(kernel: GreensKernel) -> str:
    lines = ["t/s," + ",".join(str(s) for s in kernel.s_points)]
    for t, row in zip(kernel.t_points, kernel.entries):
        lines.append(f"{t}," + ",".join(format_float(x) for x in row))
    return "\n".join(lines) + "\n"


def _check_shape(u: GridFunction, expected_base: int | None, expected_len: int | None) -> GridFunction:
    if expected_base is not None and u.base != expected_base:
        raise ShapeMismatch(f"grid starts at {u.base}, expected {expected_base}")
    if expected_len is not None and len(u) != expected_len:
        raise ShapeMismatch(f"grid has {len(u)} points, expected {expected_len}")
    return u


def _parse_json(text: str) -> GridFunction:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "base" not in data or "values" not in data:
        raise ParseError('JSON grid must be an object with "base" and "values"')
    base, values = data["base"], data["values"]
    if isinstance(base, bool) or not isinstance(base, int):
        raise ParseError(f'"base" must be an integer, got {base!r}')
    if not isinstance(values, list) or not values:
        raise ParseError('"values" must be a non-empty list')
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"non-numeric value {v!r}")
    return GridFunction(base, [float(v) for v in values])


def _parse_csv(text: str) -> GridFunction:
    rows: dict[int, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected 't,value', got {raw!r}")
        if not rows and fields[0].lower() == "t":
            continue  # header
        try:
            t = int(fields[0])
            v = float(fields[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if not math.isfinite(v):
            raise ParseError(f"line {lineno}: non-finite value")
        if t in rows:
            raise ParseError(f"line {lineno}: duplicate t={t}")
        rows[t] = v
    if not rows:
        raise ParseError("no data rows")
    ts = sorted(rows)
    missing = set(range(ts[0], ts[-1] + 1)) - rows.keys()
    if missing:
        raise ParseError(f"gap in t: missing {sorted(missing)}")
    return GridFunction(ts[0], [rows[t] for t in ts])


def parse_grid_text(
    text: str, expected_base: int | None = None, expected_len: int | None = None
) -> GridFunction:
    """CSV or JSON (detected from the first non-blank character)."""
    if text.lstrip().startswith("{"):
        u = _parse_json(text)
    else:
        u = _parse_csv(text)
    return _check_shape(u, expected_base, expected_len)


def parse_grid_file(
    path: str | Path, expected_base: int | None = None, expected_len: int | None = None
) -> GridFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_grid_text(text, expected_base, expected_len)
