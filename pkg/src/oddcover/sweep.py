"""Vertical trapezoidal decomposition of a segment arrangement inside a rectangle.

Segments carry an integer weight: the change of cover degree when the
segment is crossed upward.  For a counterclockwise polygon edge running
in +x the interior lies above, so the weight is +1; edges running in -x
get -1; cut lines that do not bound any polygon get 0.

All coordinates are Fractions.  Event abscissae are compared exactly and
equal events merge, so no epsilon ever enters the ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .geometry import ValidationError

Coord = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Window:
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "y0", "x1", "y1"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValidationError("window must have positive area")

    @property
    def area(self) -> Fraction:
        return (self.x1 - self.x0) * (self.y1 - self.y0)

    def contains_box(self, xmin, ymin, xmax, ymax) -> bool:
        return self.x0 <= xmin and xmax <= self.x1 and self.y0 <= ymin and ymax <= self.y1

    def meets_box(self, xmin, ymin, xmax, ymax) -> bool:
        return xmin < self.x1 and xmax > self.x0 and ymin < self.y1 and ymax > self.y0


@dataclass(frozen=True)
class Trapezoid:
    vertices: tuple[Coord, ...]
    area: Fraction
    sample: Coord
    degree: int


class _Seg:
    __slots__ = ("xl", "xr", "slope", "icpt", "weight")

    def __init__(self, xl, xr, slope, icpt, weight):
        self.xl, self.xr, self.slope, self.icpt, self.weight = xl, xr, slope, icpt, weight

    def y(self, x: Fraction) -> Fraction:
        return self.slope * x + self.icpt


def clip_segment(p: Coord, q: Coord, w: Window) -> tuple[Coord, Coord] | None:
    """Liang-Barsky clipping with exact parameters; None when nothing of positive length survives."""
    (x0, y0), (x1, y1) = p, q
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = Fraction(0), Fraction(1)
    for pk, qk in ((-dx, x0 - w.x0), (dx, w.x1 - x0), (-dy, y0 - w.y0), (dy, w.y1 - y0)):
        if pk == 0:
            if qk < 0:
                return None
            continue
        r = qk / pk
        if pk < 0:
            if r > t1:
                return None
            if r > t0:
                t0 = r
        else:
            if r < t0:
                return None
            if r < t1:
                t1 = r
    if t0 >= t1:
        return None
    return (x0 + t0 * dx, y0 + t0 * dy), (x0 + t1 * dx, y0 + t1 * dy)


def _polygon_centroid(pts: Sequence[Coord]) -> Coord:
    n = len(pts)
    a2 = cx = cy = Fraction(0)
    for i in range(n):
        (xa, ya), (xb, yb) = pts[i], pts[(i + 1) % n]
        c = xa * yb - xb * ya
        a2 += c
        cx += (xa + xb) * c
        cy += (ya + yb) * c
    return cx / (3 * a2), cy / (3 * a2)


def decompose(
    segments: Iterable[tuple[Coord, Coord, int]],
    window: Window,
    seed_degree: Callable[[Coord], int],
) -> list[Trapezoid]:
    """Split ``window`` into trapezoids no segment crosses, with cover degrees.

    ``seed_degree`` is called once per slab on the sample point of the lowest
    trapezoid; every other degree follows by adding crossed weights.
    """
    events: set[Fraction] = {window.x0, window.x1}
    segs: list[_Seg] = []
    for p, q, weight in segments:
        clipped = clip_segment(p, q, window)
        if clipped is None:
            continue
        (ax, ay), (bx, by) = clipped
        events.add(ax)
        events.add(bx)
        if ax == bx:
            continue
        if ax > bx:
            ax, ay, bx, by = bx, by, ax, ay
        slope = (by - ay) / (bx - ax)
        segs.append(_Seg(ax, bx, slope, ay - slope * ax, weight))
    bottom = _Seg(window.x0, window.x1, Fraction(0), window.y0, 0)
    top = _Seg(window.x0, window.x1, Fraction(0), window.y1, 0)

    # pairwise crossings, only between different slopes with overlapping x-ranges
    order = sorted(segs, key=lambda s: s.xl)
    active: list[_Seg] = []
    for s in order:
        active = [t for t in active if t.xr > s.xl]
        for t in active:
            if t.slope == s.slope:
                continue
            x = (s.icpt - t.icpt) / (t.slope - s.slope)
            if s.xl <= x <= s.xr and t.xl <= x <= t.xr:
                events.add(x)
        active.append(s)

    xs = sorted(events)
    cells: list[Trapezoid] = []
    order.sort(key=lambda s: s.xl)
    k = 0
    live: list[_Seg] = []
    for xl, xr in zip(xs, xs[1:]):
        while k < len(order) and order[k].xl <= xl:
            live.append(order[k])
            k += 1
        live = [s for s in live if s.xr >= xr]
        xm = (xl + xr) / 2
        keyed = sorted(((s.y(xm), s) for s in live), key=lambda item: item[0])
        # group coincident segments, drop those outside the window
        groups: list[tuple[_Seg, int]] = [(bottom, 0)]
        for ym, s in keyed:
            if ym <= window.y0:
                groups[0] = (groups[0][0], groups[0][1] + s.weight)
                continue
            if ym >= window.y1:
                continue
            if groups[-1][0] is not bottom and groups[-1][0].y(xm) == ym:
                groups[-1] = (groups[-1][0], groups[-1][1] + s.weight)
            else:
                groups.append((s, s.weight))
        groups.append((top, 0))
        degree = None
        for (lo, _), (hi, w_hi) in zip(groups, groups[1:]):
            ylo_l, ylo_r = lo.y(xl), lo.y(xr)
            yhi_l, yhi_r = hi.y(xl), hi.y(xr)
            verts: list[Coord] = [(xl, ylo_l), (xr, ylo_r)]
            if yhi_r != ylo_r:
                verts.append((xr, yhi_r))
            if yhi_l != ylo_l:
                verts.append((xl, yhi_l))
            area = (xr - xl) * ((yhi_l - ylo_l) + (yhi_r - ylo_r)) / 2
            sample = _polygon_centroid(verts)
            if degree is None:
                degree = seed_degree(sample)
            cells.append(Trapezoid(tuple(verts), area, sample, degree))
            degree += w_hi
    return cells
