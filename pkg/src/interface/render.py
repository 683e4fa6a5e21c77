"""
SVG rendering of polygon pairs

Coordinates stay exact until the final string formatting; crossing
markers sit at the exact crossing points and optional +/- labels mark
the sign of each Q edge.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional
from xml.sax.saxutils import escape

from ..analysis.bounds import sign_assignment
from ..config.settings import get_config
from ..geometry.kernel import Point
from ..geometry.polygon import EdgeRef, PolygonTag, bounding_box, enumerate_crossings
from .document import PolygonDocument

ATTRIBUTE_ENTITIES = {'"': "&quot;"}

DEFAULT_STROKES = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"]


@dataclass
class RenderSpec:
    width: int = field(default_factory=lambda: get_config().SVG_WIDTH)
    height: int = field(default_factory=lambda: get_config().SVG_HEIGHT)
    margin: int = field(default_factory=lambda: get_config().SVG_MARGIN)
    decimals: int = field(default_factory=lambda: get_config().SVG_DECIMALS)
    strokes: Dict[str, str] = field(default_factory=dict)
    stroke_width: float = 1.5
    mark_crossings: bool = True
    annotate_signs: bool = False
    sign_anchor: int = 0


class _Canvas:
    """Maps exact plane coordinates to SVG pixels, y axis pointing up"""

    def __init__(self, document: PolygonDocument, spec: RenderSpec):
        min_x, min_y, max_x, max_y = bounding_box([entry.polygon for entry in document.polygons])
        span_x, span_y = max(max_x - min_x, Fraction(1)), max(max_y - min_y, Fraction(1))
        self.scale = min(Fraction(spec.width - 2 * spec.margin) / span_x, Fraction(spec.height - 2 * spec.margin) / span_y)
        self.min_x, self.min_y = min_x, min_y
        self.spec = spec

    def fmt(self, value: Fraction) -> str:
        return f"{float(value):.{self.spec.decimals}f}"

    def x(self, point: Point) -> str:
        return self.fmt(self.spec.margin + (point.x - self.min_x) * self.scale)

    def y(self, point: Point) -> str:
        return self.fmt(self.spec.height - self.spec.margin - (point.y - self.min_y) * self.scale)


def render_svg(document: PolygonDocument, spec: Optional[RenderSpec] = None) -> str:
    """
    Render every polygon of the document; crossing markers and sign
    labels need exactly two polygons
    """
    spec = spec or RenderSpec()
    canvas = _Canvas(document, spec)
    lines: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    for k, entry in enumerate(document.polygons):
        stroke = spec.strokes.get(entry.name) or entry.style or DEFAULT_STROKES[k % len(DEFAULT_STROKES)]
        points = " ".join(f"{canvas.x(v)},{canvas.y(v)}" for v in entry.polygon.vertices)
        lines.append(
            f'<polygon class="polygon" data-name="{escape(entry.name, ATTRIBUTE_ENTITIES)}" points="{points}" '
            f'fill="none" stroke="{escape(stroke, ATTRIBUTE_ENTITIES)}" stroke-width="{spec.stroke_width}"/>'
        )

    # a single polygon or a larger collection is drawn without overlays
    if len(document.polygons) == 2 and (spec.mark_crossings or spec.annotate_signs):
        p, q = document.pair()

        if spec.mark_crossings:
            for crossing in enumerate_crossings(p, q).crossings:
                lines.append(
                    f'<circle class="crossing" cx="{canvas.x(crossing.point)}" cy="{canvas.y(crossing.point)}" '
                    f'r="3" fill="black"/>'
                )

        if spec.annotate_signs:
            signs = sign_assignment(p, q, EdgeRef(PolygonTag.Q, spec.sign_anchor))
            for j, edge in enumerate(q.edges):
                middle = Point((edge.source.x + edge.target.x) / 2, (edge.source.y + edge.target.y) / 2)
                lines.append(
                    f'<text class="sign" x="{canvas.x(middle)}" y="{canvas.y(middle)}" '
                    f'font-size="16" text-anchor="middle">{escape(signs.sign_of(j).value)}</text>'
                )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
