"""Exact rational plane geometry.

Every coordinate is a :class:`fractions.Fraction`; nothing in this module
ever rounds.  Polygons are validated on construction (simple, CCW, no
collinear consecutive vertices) because every parity argument downstream
assumes a clean edge set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Iterable, Iterator, Sequence


class ValidationError(ValueError):
    """Raised when geometric input violates a structural invariant."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise ValidationError(f"not a rational number: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string, int or Fraction")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """Serialize as ``p/q`` (or ``p`` when integral)."""
    q = as_rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class Vec2:
    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        object.__setattr__(self, "x", as_rational(x))
        object.__setattr__(self, "y", as_rational(y))

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.y)

    def __mul__(self, k) -> Vec2:
        k = as_rational(k)
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> Vec2:
        k = as_rational(k)
        return Vec2(self.x / k, self.y / k)

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Vec2({format_rational(self.x)}, {format_rational(self.y)})"

    def dot(self, other: Vec2) -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Vec2) -> Fraction:
        return self.x * other.y - self.y * other.x

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def as_ints(self) -> tuple[int, int]:
        if not self.is_integral():
            raise ValidationError(f"{self!r} is not a lattice point")
        return (self.x.numerator, self.y.numerator)


Point2 = Vec2
ORIGIN = Vec2(0, 0)


def orient(a: Vec2, b: Vec2, c: Vec2) -> Fraction:
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool:
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool:
    """Closed-segment intersection test (touching counts)."""
    d1, d2 = orient(c, d, a), orient(c, d, b)
    d3, d4 = orient(a, b, c), orient(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        (d1 == 0 and on_segment(a, c, d))
        or (d2 == 0 and on_segment(b, c, d))
        or (d3 == 0 and on_segment(c, a, b))
        or (d4 == 0 and on_segment(d, a, b))
    )


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def _signed_area2(pts: Sequence[Vec2]) -> Fraction:
    n = len(pts)
    return sum((pts[i].x * pts[(i + 1) % n].y - pts[(i + 1) % n].x * pts[i].y for i in range(n)), Fraction(0))


def _clean_vertices(pts: list[Vec2]) -> list[Vec2]:
    # drop consecutive duplicates, then merge collinear runs; a collinear
    # back-track (spike) is a self-overlap and is rejected
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            a, b, c = out[i - 1], out[i], out[(i + 1) % n]
            if orient(a, b, c) == 0:
                if (b - a).dot(c - b) < 0:
                    raise ValidationError(f"polygon folds back on itself at {b!r}")
                del out[i]
                changed = True
                break
    return out


@dataclass(frozen=True)
class RationalPolygon:
    """Simple polygon with exact rational vertices, stored counterclockwise."""

    vertices: tuple[Vec2, ...]

    def __init__(self, vertices: Iterable):
        pts = [v if isinstance(v, Vec2) else Vec2(*v) for v in vertices]
        pts = _clean_vertices(pts)
        if len(pts) < 3:
            raise ValidationError("a polygon needs at least 3 non-collinear vertices")
        if len(set(pts)) != len(pts):
            raise ValidationError("repeated vertex: polygon is not simple")
        n = len(pts)
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or j == (i + 1) % n:
                    continue
                c, d = pts[j], pts[(j + 1) % n]
                if segments_intersect(a, b, c, d):
                    raise ValidationError(f"edges {i} and {j} intersect: polygon is not simple")
        area2 = _signed_area2(pts)
        if area2 == 0:
            raise ValidationError("polygon has zero area")
        if area2 < 0:
            pts = [pts[0]] + pts[:0:-1]
        object.__setattr__(self, "vertices", tuple(pts))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> Iterator[tuple[Vec2, Vec2]]:
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    @classmethod
    def _trusted(cls, vertices: Iterable[Vec2]) -> RationalPolygon:
        # skips validation; only for images of an already valid polygon
        obj = object.__new__(cls)
        object.__setattr__(obj, "vertices", tuple(vertices))
        return obj

    def translate(self, v: Vec2) -> RationalPolygon:
        return RationalPolygon._trusted(p + v for p in self.vertices)

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def is_convex(self) -> bool:
        vs = self.vertices
        n = len(vs)
        return all(orient(vs[i - 1], vs[i], vs[(i + 1) % n]) > 0 for i in range(n))

    def is_integral(self) -> bool:
        return all(v.is_integral() for v in self.vertices)

    def __repr__(self) -> str:
        return "RationalPolygon([" + ", ".join(f"({format_rational(v.x)}, {format_rational(v.y)})" for v in self.vertices) + "])"


def polygon_area(P: RationalPolygon) -> Fraction:
    return _signed_area2(P.vertices) / 2


def point_in_polygon(P: RationalPolygon, x: Vec2) -> Location:
    """Exact classification by crossing number with an explicit boundary pass."""
    inside = False
    for a, b in P.edges():
        if on_segment(x, a, b):
            return Location.BOUNDARY
        if (a.y > x.y) != (b.y > x.y):
            # crossing abscissa compared without division
            t = orient(a, b, x)
            if (t > 0) == (b.y > a.y):
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lattice_points_on_segment(a: Vec2, b: Vec2) -> list[Vec2]:
    """All integer points on the closed segment [a, b], ordered from a to b."""
    if a == b:
        raise ValidationError("degenerate segment")
    d = b - a
    den = lcm(d.x.denominator, d.y.denominator)
    px, py = int(d.x * den), int(d.y * den)
    g = gcd(px, py)
    px, py = px // g, py // g
    # integer points on the line satisfy nx*X + ny*Y = c with (nx, ny) primitive
    nx, ny = -py, px
    c = nx * a.x + ny * a.y
    if c.denominator != 1:
        return []
    c = c.numerator
    _, s, t = _egcd(nx, ny)
    g0 = nx * s + ny * t
    if g0 < 0:
        s, t, g0 = -s, -t, -g0
    x0, y0 = s * c, t * c
    # parameterize X = x0 + m*px, Y = y0 + m*py; keep m with projection inside [a, b]
    pp = px * px + py * py
    lo = (px * (a.x - x0) + py * (a.y - y0)) / pp
    hi = (px * (b.x - x0) + py * (b.y - y0)) / pp
    m_lo, m_hi = -floor(-lo), floor(hi)
    if lo <= hi:
        ms = range(m_lo, m_hi + 1)
    else:
        m_lo, m_hi = -floor(-hi), floor(lo)
        ms = range(m_hi, m_lo - 1, -1)
    return [Vec2(x0 + m * px, y0 + m * py) for m in ms]


def canonical_sign(v: tuple[int, int]) -> tuple[int, int]:
    x, y = v
    if x < 0 or (x == 0 and y < 0):
        return (-x, -y)
    return (x, y)


def primitive_direction(v) -> Vec2:
    """Primitive integer vector parallel to ``v``, first nonzero coordinate positive."""
    if not isinstance(v, Vec2):
        v = Vec2(*v)
    x, y = v.as_ints()
    if x == 0 and y == 0:
        raise ValidationError("zero vector has no direction")
    g = gcd(x, y)
    return Vec2(*canonical_sign((x // g, y // g)))


@dataclass(frozen=True)
class AffineMap:
    """x -> M x + t with M = ((a, b), (c, d))."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    tx: Fraction
    ty: Fraction

    @classmethod
    def identity(cls) -> AffineMap:
        one, zero = Fraction(1), Fraction(0)
        return cls(one, zero, zero, one, zero, zero)

    @classmethod
    def scaling_about(cls, scale, center: Vec2) -> AffineMap:
        """x -> scale * (x - center)."""
        s = as_rational(scale)
        zero = Fraction(0)
        return cls(s, zero, zero, s, -s * center.x, -s * center.y)

    @classmethod
    def linear(cls, a, b, c, d, tx=0, ty=0) -> AffineMap:
        return cls(*(as_rational(q) for q in (a, b, c, d, tx, ty)))

    def __call__(self, p: Vec2) -> Vec2:
        return Vec2(self.a * p.x + self.b * p.y + self.tx, self.c * p.x + self.d * p.y + self.ty)

    def apply_linear(self, p: Vec2) -> Vec2:
        return Vec2(self.a * p.x + self.b * p.y, self.c * p.x + self.d * p.y)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> AffineMap:
        det = self.det
        if det == 0:
            raise ValidationError("singular affine map")
        a, b, c, d = self.d / det, -self.b / det, -self.c / det, self.a / det
        return AffineMap(a, b, c, d, -(a * self.tx + b * self.ty), -(c * self.tx + d * self.ty))

    def then(self, other: AffineMap) -> AffineMap:
        """Composition: first self, then other."""
        a = other.a * self.a + other.b * self.c
        b = other.a * self.b + other.b * self.d
        c = other.c * self.a + other.d * self.c
        d = other.c * self.b + other.d * self.d
        tx = other.a * self.tx + other.b * self.ty + other.tx
        ty = other.c * self.tx + other.d * self.ty + other.ty
        return AffineMap(a, b, c, d, tx, ty)

    def as_strings(self) -> list[str]:
        return [format_rational(q) for q in (self.a, self.b, self.c, self.d, self.tx, self.ty)]


@dataclass(frozen=True)
class IntegerPolygon:
    polygon: RationalPolygon
    normalized: bool = False

    def __post_init__(self):
        if not self.polygon.is_integral():
            raise ValidationError("IntegerPolygon requires integer vertices")
        if self.normalized:
            pts = [v.as_ints() for v in self.polygon.vertices]
            if (0, 0) not in pts:
                raise ValidationError("normalized polygon must have a vertex at the origin")
            if all(x % 2 == 0 and y % 2 == 0 for x, y in pts):
                raise ValidationError("normalized polygon must not have all-even vertices")

    @property
    def vertices(self) -> tuple[Vec2, ...]:
        return self.polygon.vertices

    def lattice_vertices(self) -> list[tuple[int, int]]:
        return [v.as_ints() for v in self.polygon.vertices]


def normalize_polygon(P: RationalPolygon) -> tuple[IntegerPolygon, AffineMap]:
    """Translate the first vertex to the origin, clear denominators, divide out the content.

    Dividing by the gcd of all coordinates subsumes repeated halving and
    leaves a primitive (hence not all-even) vertex set.
    """
    origin = P.vertices[0]
    shifted = [v - origin for v in P.vertices]
    den = 1
    for v in shifted:
        den = lcm(den, v.x.denominator, v.y.denominator)
    ints = [(int(v.x * den), int(v.y * den)) for v in shifted]
    content = 0
    for x, y in ints:
        content = gcd(content, x, y)
    scale = Fraction(den, content)
    affine = AffineMap.scaling_about(scale, origin)
    poly = RationalPolygon(affine(v) for v in P.vertices)
    return IntegerPolygon(poly, normalized=True), affine


@dataclass(frozen=True)
class Lattice2:
    """Full-rank sublattice of Z^2 spanned by two integer vectors."""

    g1: tuple[int, int]
    g2: tuple[int, int]

    def __post_init__(self):
        if self.det == 0:
            raise ValidationError("lattice generators are linearly dependent")

    @property
    def det(self) -> int:
        return self.g1[0] * self.g2[1] - self.g1[1] * self.g2[0]

    @property
    def covolume(self) -> int:
        return abs(self.det)

    def contains(self, v: tuple[int, int]) -> bool:
        det = self.det
        s = v[0] * self.g2[1] - v[1] * self.g2[0]
        t = self.g1[0] * v[1] - self.g1[1] * v[0]
        return s % det == 0 and t % det == 0
