"""Exact areas of mod-2 unions of polygon translates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .geometry import (
    Location,
    RationalPolygon,
    ValidationError,
    Vec2,
    format_rational,
    orient,
    point_in_polygon,
    polygon_area,
)
from .sweep import Coord, Window, decompose


@dataclass(frozen=True)
class TranslateFamily:
    base: RationalPolygon
    offsets: tuple[Vec2, ...]

    def __init__(self, base: RationalPolygon, offsets: Iterable):
        offsets = tuple(v if isinstance(v, Vec2) else Vec2(*v) for v in offsets)
        if not offsets:
            raise ValidationError("a translate family needs at least one offset")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "offsets", offsets)

    def polygons(self) -> list[RationalPolygon]:
        return [self.base.translate(z) for z in self.offsets]

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        bx0, by0, bx1, by1 = self.base.bbox()
        xs = [z.x for z in self.offsets]
        ys = [z.y for z in self.offsets]
        return bx0 + min(xs), by0 + min(ys), bx1 + max(xs), by1 + max(ys)


@dataclass(frozen=True)
class Cell:
    vertices: tuple[Coord, ...]
    area: Fraction
    sample: Coord
    degree: int

    @property
    def parity(self) -> int:
        return self.degree & 1


@dataclass(frozen=True)
class ParityRegion:
    cells: tuple[Cell, ...]
    window: Window

    def odd_area(self) -> Fraction:
        return sum((c.area for c in self.cells if c.parity), Fraction(0))

    def total_area(self) -> Fraction:
        return sum((c.area for c in self.cells), Fraction(0))

    def max_degree(self) -> int:
        return max(c.degree for c in self.cells)

    def degrees(self) -> set[int]:
        return {c.degree for c in self.cells}

    def to_dict(self) -> dict:
        w = self.window
        return {
            "window": [format_rational(q) for q in (w.x0, w.y0, w.x1, w.y1)],
            "cells": [
                {
                    "vertices": [[format_rational(x), format_rational(y)] for x, y in c.vertices],
                    "parity": c.parity,
                    "degree": c.degree,
                    "area": format_rational(c.area),
                }
                for c in self.cells
            ],
        }


class Coverage(NamedTuple):
    parity: int
    degree: int


def _count_containing(polys: Sequence[RationalPolygon], boxes, x: Vec2) -> int | None:
    count = 0
    for poly, (bx0, by0, bx1, by1) in zip(polys, boxes):
        if x.x < bx0 or x.x > bx1 or x.y < by0 or x.y > by1:
            continue
        loc = point_in_polygon(poly, x)
        if loc is Location.BOUNDARY:
            return None
        if loc is Location.INTERIOR:
            count += 1
    return count


def parity_at_point(family: TranslateFamily, x: Vec2) -> Coverage | Location:
    """Cover count of ``x``; ``Location.BOUNDARY`` when x is on some translate's edge."""
    if not isinstance(x, Vec2):
        x = Vec2(*x)
    polys = family.polygons()
    count = _count_containing(polys, [p.bbox() for p in polys], x)
    if count is None:
        return Location.BOUNDARY
    return Coverage(count & 1, count)


def polygon_edge_segments(poly: RationalPolygon) -> list[tuple[Coord, Coord, int]]:
    out = []
    for a, b in poly.edges():
        w = 1 if b.x > a.x else (-1 if b.x < a.x else 0)
        out.append(((a.x, a.y), (b.x, b.y), w))
    return out


def subdivide_polygons(
    polys: Sequence[RationalPolygon],
    window: Window,
    cuts: Iterable[tuple[Coord, Coord]] = (),
) -> ParityRegion:
    """Parity subdivision of ``window`` by an arbitrary multiset of polygons.

    ``cuts`` are extra segments (weight 0) that refine the cells without
    changing degrees.
    """
    boxes = [p.bbox() for p in polys]
    keep = [i for i, b in enumerate(boxes) if window.meets_box(*b)]
    polys = [polys[i] for i in keep]
    boxes = [boxes[i] for i in keep]
    segments = [s for p in polys for s in polygon_edge_segments(p)]
    segments.extend((p, q, 0) for p, q in cuts)

    def seed(pt: Coord) -> int:
        count = _count_containing(polys, boxes, Vec2(*pt))
        if count is None:
            raise AssertionError(f"cell sample {pt} lies on a polygon edge")
        return count

    traps = decompose(segments, window, seed)
    return ParityRegion(tuple(Cell(t.vertices, t.area, t.sample, t.degree) for t in traps), window)


def subdivide(family: TranslateFamily, window: Window, cuts: Iterable[tuple[Coord, Coord]] = ()) -> ParityRegion:
    return subdivide_polygons(family.polygons(), window, cuts)


def odd_area(P: RationalPolygon, K: Sequence) -> Fraction:
    """Exact area of P ⊛ K (points covered an odd number of times)."""
    family = TranslateFamily(P, K)
    x0, y0, x1, y1 = family.bbox()
    return subdivide(family, Window(x0, y0, x1, y1)).odd_area()


def clip_convex(subject: Sequence[Vec2], clip: Sequence[Vec2]) -> list[Vec2]:
    """Sutherland-Hodgman clipping of ``subject`` by the CCW convex polygon ``clip``."""
    out = list(subject)
    n = len(clip)
    for i in range(n):
        a, b = clip[i], clip[(i + 1) % n]
        inp, out = out, []
        if not inp:
            break
        prev = inp[-1]
        s_prev = orient(a, b, prev)
        for cur in inp:
            s_cur = orient(a, b, cur)
            if s_cur >= 0:
                if s_prev < 0:
                    out.append(prev + (cur - prev) * (s_prev / (s_prev - s_cur)))
                out.append(cur)
            elif s_prev > 0:
                out.append(prev + (cur - prev) * (s_prev / (s_prev - s_cur)))
            prev, s_prev = cur, s_cur
    return out


def _area_of(pts: Sequence[Vec2]) -> Fraction:
    n = len(pts)
    if n < 3:
        return Fraction(0)
    return sum((pts[i].x * pts[(i + 1) % n].y - pts[(i + 1) % n].x * pts[i].y for i in range(n)), Fraction(0)) / 2


def odd_area_incl_excl(P: RationalPolygon, K: Sequence) -> Fraction:
    """Inclusion-exclusion oracle: A(⊕ X_i) = Σ_{S≠∅} (-2)^{|S|-1} A(∩_S X_i)."""
    if not P.is_convex():
        raise ValidationError("inclusion-exclusion oracle requires a convex polygon")
    K = [v if isinstance(v, Vec2) else Vec2(*v) for v in K]
    if not 1 <= len(K) <= 12:
        raise ValidationError("inclusion-exclusion oracle supports 1..12 translates")
    translates = [[p + k for p in P.vertices] for k in K]
    total = Fraction(0)
    for size in range(1, len(K) + 1):
        coeff = (-2) ** (size - 1)
        for subset in combinations(range(len(K)), size):
            region = translates[subset[0]]
            for j in subset[1:]:
                region = clip_convex(region, translates[j])
                if len(region) < 3:
                    break
            total += coeff * _area_of(region)
    return total


def polygon_area_in_window(P: RationalPolygon, window: Window) -> Fraction:
    """Area of P ∩ window (P may be non-convex; the window is the convex clipper)."""
    rect = [Vec2(window.x0, window.y0), Vec2(window.x1, window.y0), Vec2(window.x1, window.y1), Vec2(window.x0, window.y1)]
    return _area_of(clip_convex(P.vertices, rect))


__all__ = [
    "Cell",
    "Coverage",
    "ParityRegion",
    "TranslateFamily",
    "Window",
    "clip_convex",
    "odd_area",
    "odd_area_incl_excl",
    "parity_at_point",
    "polygon_area",
    "polygon_area_in_window",
    "subdivide",
    "subdivide_polygons",
]
