"""Deterministic SVG rendering of instances and island partitions.

Planar sets render to a single panel; 3D sets render three axis-aligned
projections side by side.  Hulls are shaded convex polygons under the
points, which are drawn per color class.  Coordinates are mapped to the
fixed viewbox with exact rational arithmetic and quantized to 1/1000 px, so
equal inputs give byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .geometry import _hull_2d

PANEL = 640
MARGIN = 32
POINT_R = 5

# color 0 drawn as a white-filled outlined disc, the rest filled
PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]
HULL_FILL = "#808080"
HULL_OPACITY = "0.34"


def _fmt(v):
    milli = round(v * 1000)
    sign = "-" if milli < 0 else ""
    milli = abs(milli)
    return f"{sign}{milli // 1000}.{milli % 1000:03d}"


class _Panel:
    def __init__(self, coords, x_off):
        xs = [c[0] for c in coords]
        ys = [c[1] for c in coords]
        lo_x, hi_x = min(xs), max(xs)
        lo_y, hi_y = min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y, Fraction(1))
        self.scale = Fraction(PANEL - 2 * MARGIN) / span
        self.lo_x, self.lo_y = lo_x, lo_y
        self.x_off = x_off

    def map(self, c):
        x = self.x_off + MARGIN + (c[0] - self.lo_x) * self.scale
        y = PANEL - MARGIN - (c[1] - self.lo_y) * self.scale
        return _fmt(x), _fmt(y)


def _projections(dim):
    if dim == 2:
        return [(0, 1)]
    if dim == 3:
        return [(0, 1), (0, 2), (1, 2)]
    raise PreconditionError(f"rendering supports dim 2 and 3, not {dim}")


def render_svg(S, partition=None):
    """SVG document for the instance, with island hulls when given."""
    projections = _projections(S.dim)
    width = PANEL * len(projections)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{PANEL}" viewBox="0 0 {width} {PANEL}">'
    ]
    parts = partition.parts if partition is not None else ()
    for p_idx, axes in enumerate(projections):
        coords = [
            (S.coords(i)[axes[0]], S.coords(i)[axes[1]]) for i in S.ids()
        ]
        panel = _Panel(coords, p_idx * PANEL)
        out.append(f'<g id="proj{axes[0]}{axes[1]}">')
        for part in parts:
            poly = _hull_2d([coords[i] for i in sorted(part)])
            pts = " ".join(",".join(panel.map(c)) for c in poly)
            if len(poly) == 1:
                x, y = panel.map(poly[0])
                out.append(
                    f'<circle cx="{x}" cy="{y}" r="{POINT_R + 4}" '
                    f'fill="none" stroke="{HULL_FILL}" stroke-opacity="{HULL_OPACITY}"/>'
                )
            elif len(poly) == 2:
                (x1, y1), (x2, y2) = (panel.map(c) for c in poly)
                out.append(
                    f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                    f'stroke="{HULL_FILL}" stroke-opacity="{HULL_OPACITY}" '
                    'stroke-width="4"/>'
                )
            else:
                out.append(
                    f'<polygon points="{pts}" fill="{HULL_FILL}" '
                    f'fill-opacity="{HULL_OPACITY}" stroke="{HULL_FILL}"/>'
                )
        for i in S.ids():
            x, y = panel.map(coords[i])
            color = PALETTE[S.color[i] % len(PALETTE)]
            if S.color[i] == 0:
                out.append(
                    f'<circle cx="{x}" cy="{y}" r="{POINT_R}" fill="white" '
                    f'stroke="{color}" stroke-width="2"/>'
                )
            else:
                out.append(f'<circle cx="{x}" cy="{y}" r="{POINT_R}" fill="{color}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
