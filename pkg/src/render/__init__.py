"""SVG figures and JSON / text reports."""
from .report import SCHEMA, dumps, render_text, report_envelope
from .svg import polygon_to_svg, svg_document

__all__ = ["SCHEMA", "dumps", "render_text", "report_envelope", "polygon_to_svg", "svg_document"]
