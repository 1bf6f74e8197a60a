"""SVG pictures of realized configurations with a partition or a tree drawn on top."""

from __future__ import annotations

from fractions import Fraction

from .configuration import HullConfig, realize
from .lattice import Partition, is_noncrossing
from .oracle import convex_hull
from .trees import Forest, is_noncrossing_forest

CANVAS = 400
MARGIN = 40
PALETTE = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f"]


def _num(x: Fraction) -> str:
    return f"{float(x):.6f}"


def _frame(points):
    """Map exact coordinates into the canvas, y pointing up, aspect preserved."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0) or Fraction(1)
    scale = Fraction(CANVAS - 2 * MARGIN) / span

    def to_canvas(p):
        return (MARGIN + (p[0] - x0) * scale, CANVAS - MARGIN - (p[1] - y0) * scale)

    return to_canvas


def parse_object(config: HullConfig, text: str):
    """A tree string (``0-1;1-2``) or a partition string (``0,1|2``)."""
    if "-" in text:
        forest = Forest.parse(config.n, text)
        if not is_noncrossing_forest(config, forest):
            raise ValueError(f"{forest} is not a noncrossing forest on {config}")
        return forest
    part = Partition.parse(text)
    if not is_noncrossing(config, part):
        raise ValueError(f"{part} is not noncrossing on {config}")
    return part


def render_svg(config: HullConfig, obj=None) -> str:
    pts = realize(config)
    to_canvas = _frame(pts)
    cv = [to_canvas(p) for p in pts]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
    ]
    hull = convex_hull(pts)
    if len(hull) > 2:
        poly = " ".join(f"{_num(x)},{_num(y)}" for x, y in (to_canvas(p) for p in hull))
        out.append(f'<polygon class="hull" points="{poly}" fill="none" stroke="#bbbbbb" stroke-dasharray="4 3"/>')
    if isinstance(obj, Partition):
        for i, blk in enumerate(obj.blocks):
            if len(blk) < 2:
                continue
            color = PALETTE[i % len(PALETTE)]
            shape = convex_hull([pts[p] for p in blk])
            coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in (to_canvas(p) for p in shape))
            if len(shape) > 2:
                out.append(
                    f'<polygon class="block" points="{coords}" fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="2"/>'
                )
            else:
                out.append(f'<polyline class="block" points="{coords}" fill="none" stroke="{color}" stroke-width="6" stroke-linecap="round"/>')
    elif isinstance(obj, Forest):
        for a, b in obj.sorted_edges():
            (x1, y1), (x2, y2) = cv[a], cv[b]
            out.append(
                f'<line class="edge" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" stroke="black" stroke-width="2"/>'
            )
    for i, (x, y) in enumerate(cv):
        out.append(f'<circle class="point" cx="{_num(x)}" cy="{_num(y)}" r="4" fill="black"/>')
        out.append(
            f'<text x="{_num(x + 7)}" y="{_num(y - 7)}" font-family="monospace" font-size="12">{i}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
