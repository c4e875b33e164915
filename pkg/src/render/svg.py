"""
Standalone SVG rendering of polygons.

Fixed 800 x 800 canvas centered on the vertex centroid. The largest
centroid distance maps to 320 px, which leaves a 10% margin on every side.
The y axis points up. Numbers are printed with 12 significant digits, so
identical polygons give identical bytes.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import numpy as np

from ..exceptions import GeometryError
from ..models import ComplexPolygon

logger = logging.getLogger(__name__)

CANVAS = 800
RADIUS_PX = 320
MARKER_RADIUS = 4


def _num(x: float) -> str:
    text = f"{x:.12g}"
    return "0" if text == "-0" else text


def svg_document(polygon: ComplexPolygon, title: Optional[str] = None) -> str:
    """SVG 1.1 text: closed polyline through p_0 .. p_{n-1}, one circle per vertex."""
    if not polygon.is_pairwise_distinct():
        raise GeometryError("cannot draw a polygon with coincident vertices")
    v = polygon.vertices
    center = v.mean()
    reach = float(np.abs(v - center).max())
    scale = RADIUS_PX / reach
    half = CANVAS / 2
    xs = half + scale * (v.real - center.real)
    ys = half - scale * (v.imag - center.imag)
    points = [f"{_num(x)},{_num(y)}" for x, y in zip(xs, ys)]

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">',
    ]
    if title:
        lines.append(f"  <title>{title}</title>")
    lines.append(f'  <rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="white"/>')
    lines.append(f'  <polyline fill="none" stroke="black" stroke-width="1.5" '
                 f'points="{" ".join(points + points[:1])}"/>')
    lines.append('  <g fill="black">')
    for j, (x, y) in enumerate(zip(xs, ys)):
        lines.append(f'    <circle id="p{j}" cx="{_num(x)}" cy="{_num(y)}" r="{MARKER_RADIUS}"/>')
    lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def polygon_to_svg(polygon: ComplexPolygon, path: str | Path, title: Optional[str] = None) -> Path:
    """Write svg_document(polygon) to path; OSError propagates for unwritable paths."""
    path = Path(path)
    path.write_text(svg_document(polygon, title), encoding="utf-8")
    logger.info("wrote %s (%d vertices)", path, polygon.n)
    return path
