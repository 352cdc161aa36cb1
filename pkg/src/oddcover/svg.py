"""Deterministic SVG figures: stripe patterns, stripe xor-sums, marker sets, cover degree cells.

Shapes are exact polygons from the subdivision engine; nothing is
rasterized.  Coordinates are multiplied by a common denominator when that
is small enough, so the file holds exact integers; otherwise they are
rounded to six decimals.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .cover import OddCover, line_cuts, _translates_meeting, marker_sets
from .geometry import Vec2
from .parity import subdivide_polygons
from .stripes import Membership, StripeXor, xor_eval
from .sweep import Window, decompose

Coord = tuple[Fraction, Fraction]

PALETTE = ["#ffffff", "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c"]
MAX_EXACT_DENOMINATOR = 10**6
STROKE = Fraction(1, 40)


class _Canvas:
    def __init__(self, window: Window, scale: int):
        self.window = window
        self.scale = scale
        self.items: list[tuple[str, list[Coord], dict]] = []

    def polygon(self, pts: Sequence[Coord], **attrs):
        self.items.append(("polygon", list(pts), attrs))

    def circle(self, c: Coord, r: Fraction, **attrs):
        self.items.append(("circle", [c, (r, r)], attrs))

    def render(self) -> str:
        w = self.window
        den = 1
        for _, pts, _ in self.items:
            for x, y in pts:
                den = lcm(den, Fraction(x).denominator, Fraction(y).denominator)
        den = lcm(den, w.x0.denominator, w.y0.denominator, w.x1.denominator, w.y1.denominator)
        exact = den <= MAX_EXACT_DENOMINATOR
        unit = self.scale * den if exact else self.scale

        def num(q) -> str:
            v = Fraction(q) * unit
            if v.denominator == 1:
                return str(v.numerator)
            return f"{float(v):.6f}"

        # y grows downward in SVG, so flip about the window
        def X(x):
            return num(x - w.x0)

        def Y(y):
            return num(w.y1 - y)

        width, height = num(w.x1 - w.x0), num(w.y1 - w.y0)
        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
            f'data-units-per-length="{unit}">',
        ]
        for kind, pts, attrs in self.items:
            extra = "".join(
                f' {k.replace("_", "-")}="{num(v) if isinstance(v, Fraction) else v}"' for k, v in sorted(attrs.items())
            )
            if kind == "polygon":
                coords = " ".join(f"{X(x)},{Y(y)}" for x, y in pts)
                out.append(f'  <polygon points="{coords}"{extra}/>')
            else:
                (cx, cy), (r, _) = pts
                out.append(f'  <circle cx="{X(cx)}" cy="{Y(cy)}" r="{num(r)}"{extra}/>')
        out.append("</svg>")
        return "\n".join(out) + "\n"


def stripe_line_segments(T: StripeXor, window: Window) -> list[tuple[Coord, Coord, int]]:
    out = []
    for s in T.stripes:
        n = s.normal
        shift = n * (-s.offset / n.dot(n))  # a point with n·x = -c
        moved = Window(window.x0 - shift.x, window.y0 - shift.y, window.x1 - shift.x, window.y1 - shift.y)
        for (px, py), (qx, qy) in line_cuts(n, moved):
            out.append(((px + shift.x, py + shift.y), (qx + shift.x, qy + shift.y), 0))
    return out


def render_xor(T: StripeXor, window: Window, scale: int = 100) -> str:
    """The xor-sum of stripe patterns (one stripe gives a plain stripe figure)."""
    cells = decompose(stripe_line_segments(T, window), window, lambda pt: 0)
    canvas = _Canvas(window, scale)
    for cell in cells:
        if xor_eval(T, Vec2(*cell.sample)) is Membership.IN:
            canvas.polygon(cell.vertices, fill="#4c72b0", stroke="none")
    return canvas.render()


def render_markers(cover: OddCover, scale: int = 100) -> str:
    """The polygon, its lattice points, and each direction's marker points as filled discs."""
    P = cover.polygon.polygon
    x0, y0, x1, y1 = P.bbox()
    pad = Fraction(1, 2)
    window = Window(x0 - pad, y0 - pad, x1 + pad, y1 + pad)
    canvas = _Canvas(window, scale)
    canvas.polygon([(v.x, v.y) for v in P.vertices], fill="#eeeeee", stroke="#000000", stroke_width=STROKE)
    r = Fraction(1, 12)
    for y in range(int(y0), int(y1) + 1):
        for x in range(int(x0), int(x1) + 1):
            canvas.circle((Fraction(x), Fraction(y)), r, fill="none", stroke="#000000", stroke_width=STROKE)
    for i, m in enumerate(marker_sets(cover.polygon, cover.classes or None)):
        colour = PALETTE[1 + i % (len(PALETTE) - 1)]
        for x, y in m.points:
            # nudge each class's disc so shared points stay visible
            off = Fraction(i, 20)
            canvas.circle((x + off, y + off), r, fill=colour, stroke="none")
    return canvas.render()


def render_cover(cover: OddCover, window: Window | None = None, scale: int = 100) -> str:
    """Cells of the cover's window coloured by cover degree."""
    window = cover.window() if window is None else window
    P = cover.polygon.polygon
    polys = [P.translate(Vec2(*z) + u) for u in cover.U for z in _translates_meeting(P, cover.weighting, window, u)]
    region = subdivide_polygons(polys, window)
    canvas = _Canvas(window, scale)
    degrees = sorted(region.degrees())
    for cell in region.cells:
        colour = PALETTE[1 + degrees.index(cell.degree) % (len(PALETTE) - 1)]
        canvas.polygon(cell.vertices, fill=colour, stroke="none", data_degree=str(cell.degree))
    return canvas.render()
