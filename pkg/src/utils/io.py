"""
Polygon and polytope JSON files.

    polygon:  {"n": 5, "vertices": [[re, im], ...]}
    polytope: {"d": 3, "n": 8, "vertices": [[x1, x2, x3], ...]}

Reports written by the CLI embed these same objects, so a report's
"polygon" or "polytope" entry can be fed back in.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from ..exceptions import CyclogonError, InputFormatError
from ..models import ComplexPolygon, PolytopeVertices

__all__ = [
    "polygon_to_dict",
    "polygon_from_dict",
    "polytope_to_dict",
    "polytope_from_dict",
    "read_json",
    "write_text",
    "load_polygon",
    "load_polytope",
]


def polygon_to_dict(polygon: ComplexPolygon) -> dict[str, Any]:
    return {
        "n": polygon.n,
        "vertices": [[float(z.real), float(z.imag)] for z in polygon.vertices],
    }


def polytope_to_dict(polytope: PolytopeVertices) -> dict[str, Any]:
    return {
        "d": polytope.d,
        "n": polytope.n,
        "vertices": [[float(x) for x in row] for row in polytope.vertices],
    }


def _vertex_rows(data: Any, kind: str) -> tuple[dict, list]:
    if not isinstance(data, dict):
        raise InputFormatError(f"{kind} JSON must be an object")
    # accept a CLI report wrapping the object
    if "vertices" not in data and isinstance(data.get(kind), dict):
        data = data[kind]
    rows = data.get("vertices")
    if not isinstance(rows, list) or not rows:
        raise InputFormatError(f"{kind} JSON needs a non-empty 'vertices' list")
    n = data.get("n", len(rows))
    if not isinstance(n, int) or n != len(rows):
        raise InputFormatError(f"'n' is {n!r} but {len(rows)} vertices were given")
    return data, rows


def _float_rows(rows: list, width: int | None, kind: str) -> np.ndarray:
    try:
        array = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{kind} vertices must be lists of numbers: {exc}") from exc
    if array.ndim != 2 or (width is not None and array.shape[1] != width):
        expected = f"[{', '.join(['x'] * width)}]" if width else "equal-length lists"
        raise InputFormatError(f"{kind} vertices must be {expected}, got shape {array.shape}")
    if not np.isfinite(array).all():
        raise InputFormatError(f"{kind} vertices must be finite")
    return array


def polygon_from_dict(data: Any) -> ComplexPolygon:
    _, rows = _vertex_rows(data, "polygon")
    array = _float_rows(rows, 2, "polygon")
    try:
        return ComplexPolygon(array[:, 0] + 1j * array[:, 1])
    except CyclogonError as exc:
        raise InputFormatError(str(exc)) from exc


def polytope_from_dict(data: Any) -> PolytopeVertices:
    obj, rows = _vertex_rows(data, "polytope")
    array = _float_rows(rows, None, "polytope")
    d = obj.get("d", array.shape[1])
    if d != array.shape[1]:
        raise InputFormatError(f"'d' is {d!r} but vertices have {array.shape[1]} coordinates")
    return PolytopeVertices(array)


def read_json(path: str | Path) -> Any:
    """Parse a JSON file; OSError propagates, bad JSON becomes InputFormatError."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text, parse_constant=lambda name: math.nan)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def load_polygon(path: str | Path) -> ComplexPolygon:
    return polygon_from_dict(read_json(path))


def load_polytope(path: str | Path) -> PolytopeVertices:
    return polytope_from_dict(read_json(path))
