"""SVG drawings of cell decompositions of TP^2.

A point ``x`` is drawn at ``(x_1 - x_0, x_2 - x_0)`` with the second axis
pointing up.  Every rendered cell becomes exactly one ``<path>``: vertices
are small circles, edges are line segments and 2-cells are filled polygons.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .cells import CellPolyhedron, Inequality, TropicalComplex, polyhedron_vertices
from .core import TropicalError, normalize
from .hull import SegmentChain

__all__ = ["render_svg", "plane_coordinates"]

_STYLE = {
    0: 'fill="#1f3b73" stroke="none"',
    1: 'fill="none" stroke="#1f3b73" stroke-width="2"',
    2: 'fill="#9ab8e6" fill-opacity="0.55" stroke="none"',
}
_UNBOUNDED_STYLE = {
    1: 'fill="none" stroke="#7a7a7a" stroke-width="1" stroke-dasharray="4 3"',
    2: 'fill="#e3e3e3" fill-opacity="0.5" stroke="none"',
}


def plane_coordinates(x) -> tuple[Fraction, Fraction]:
    p = normalize(x)
    if p.dim != 3:
        raise TropicalError("only points of TP^2 can be drawn")
    return p[1], p[2]


def _box(points: Iterable[tuple[Fraction, Fraction]], pad: Fraction):
    pts = list(points)
    if not pts:
        pts = [(Fraction(0), Fraction(0))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    margin = span * pad + 1
    return min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin


def _box_inequalities(box) -> list[Inequality]:
    x_lo, x_hi, y_lo, y_hi = box
    # the plane coordinates are x_1 - x_0 and x_2 - x_0
    return [
        Inequality(1, 0, x_hi),
        Inequality(0, 1, -x_lo),
        Inequality(2, 0, y_hi),
        Inequality(0, 2, -y_lo),
    ]


def _ordered_polygon(points: Sequence[tuple[Fraction, Fraction]]):
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


class _Canvas:
    def __init__(self, box, width: int):
        self.x_lo, self.x_hi, self.y_lo, self.y_hi = box
        self.width = width
        self.scale = Fraction(width) / (self.x_hi - self.x_lo)
        self.height = int(math.ceil((self.y_hi - self.y_lo) * self.scale))

    def map(self, p) -> tuple[float, float]:
        u = (p[0] - self.x_lo) * self.scale
        v = (self.y_hi - p[1]) * self.scale
        return float(u), float(v)

    def fmt(self, p) -> str:
        u, v = self.map(p)
        return f"{u:.2f} {v:.2f}"


def _cell_path(canvas: _Canvas, dim: int, points, cls: str, style: str, label: str) -> str:
    if dim == 0:
        u, v = canvas.map(points[0])
        r = 3.5
        d = f"M {u - r:.2f} {v:.2f} a {r} {r} 0 1 0 {2 * r} 0 a {r} {r} 0 1 0 {-2 * r} 0 Z"
    elif dim == 1:
        a, b = sorted(points)[0], sorted(points)[-1]
        d = f"M {canvas.fmt(a)} L {canvas.fmt(b)}"
    else:
        ring = _ordered_polygon(points)
        d = "M " + " L ".join(canvas.fmt(p) for p in ring) + " Z"
    return f'<path class="{cls}" data-type="{escape(label)}" d="{d}" {style}/>'


def _clipped(cell: CellPolyhedron, box) -> list[tuple[Fraction, Fraction]]:
    verts, rays = polyhedron_vertices(list(cell.inequalities) + _box_inequalities(box), 3)
    assert not rays
    return sorted({(v[1], v[2]) for v in verts})


def render_svg(
    cplx: TropicalComplex,
    *,
    unbounded: bool = False,
    segments: Sequence[SegmentChain] = (),
    width: int = 480,
    pad: Fraction = Fraction(1, 4),
) -> str:
    """Draw the cells of a decomposition of TP^2 as SVG text.

    Bounded cells are always drawn; with ``unbounded`` the unbounded cells
    of a full decomposition are drawn too, clipped to the padded bounding
    box of the bounded part.  ``segments`` adds one polyline path per
    tropical segment, through its breakpoints.
    """
    if cplx.n != 3:
        raise TropicalError(f"SVG rendering needs cells in TP^2, got n={cplx.n}")
    anchor = [plane_coordinates(v) for v in cplx.vertices]
    anchor += [plane_coordinates(row) for row in cplx.configuration.rows]
    for chain in segments:
        anchor += [plane_coordinates(b) for b in chain.breakpoints]
    box = _box(anchor, pad)
    canvas = _Canvas(box, width)
    paths = []
    cells = sorted(cplx.cells, key=lambda c: (-c.dimension, c.type))
    for cell in cells:
        if cell.bounded:
            pts = [plane_coordinates(v) for v in cell.vertices]
            style, cls = _STYLE[cell.dimension], f"cell bounded dim{cell.dimension}"
        elif unbounded:
            pts = _clipped(cell, box)
            style, cls = _UNBOUNDED_STYLE[cell.dimension], f"cell unbounded dim{cell.dimension}"
        else:
            continue
        if not pts:
            continue
        paths.append(_cell_path(canvas, cell.dimension, pts, cls, style, str(cell.type)))
    for chain in segments:
        pts = [canvas.fmt(plane_coordinates(b)) for b in chain.breakpoints]
        d = "M " + " L ".join(pts) if len(pts) > 1 else f"M {pts[0]} l 0 0"
        paths.append(f'<path class="segment" d="{d}" fill="none" stroke="#b5332e" stroke-width="2"/>')
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas.width}" '
        f'height="{canvas.height}" viewBox="0 0 {canvas.width} {canvas.height}">'
    )
    return "\n".join([head, *paths, "</svg>"]) + "\n"
