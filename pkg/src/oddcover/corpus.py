"""A fixed corpus of test polygons: named shapes plus seeded random rational polygons."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .geometry import RationalPolygon, ValidationError, Vec2

F = Fraction


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    polygon: RationalPolygon


NAMED = {
    "unit-triangle": [(0, 0), (1, 0), (0, 1)],
    "unit-square": [(0, 0), (1, 0), (1, 1), (0, 1)],
    "symmetric-hexagon": [(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)],
    "pentagon": [(0, 0), (2, 0), (3, 2), (1, 3), (-1, 1)],
    "l-hexagon": [(0, 0), (1, 0), (1, F(1, 2)), (F(1, 2), F(1, 2)), (F(1, 2), 1), (0, 1)],
}


def random_lattice_polygon(rng: random.Random, max_vertices: int = 7, size: int = 3) -> RationalPolygon:
    """Star-shaped polygon through random grid points, sorted by angle about their mean."""
    while True:
        n = rng.randint(3, max_vertices)
        pts = {(rng.randint(0, size), rng.randint(0, size)) for _ in range(n)}
        if len(pts) < 3:
            continue
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        ordered = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        try:
            return RationalPolygon(ordered)
        except ValidationError:
            continue


def rational_similarity(rng: random.Random, P: RationalPolygon) -> RationalPolygon:
    """Scale by a random positive rational and shift by a random rational vector."""
    scale = F(rng.randint(1, 9), rng.randint(1, 9))
    shift = Vec2(F(rng.randint(-9, 9), rng.randint(1, 9)), F(rng.randint(-9, 9), rng.randint(1, 9)))
    return RationalPolygon(v * scale + shift for v in P.vertices)


def random_rational_polygon(rng: random.Random, max_vertices: int = 7, size: int = 3) -> RationalPolygon:
    return rational_similarity(rng, random_lattice_polygon(rng, max_vertices, size))


def corpus(seed: int = 2024, random_count: int = 20) -> list[CorpusEntry]:
    out = [CorpusEntry(name, RationalPolygon(vs)) for name, vs in NAMED.items()]
    rng = random.Random(seed)
    for i in range(random_count):
        out.append(CorpusEntry(f"random-{i:02d}", random_rational_polygon(rng)))
    return out
