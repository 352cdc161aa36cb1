"""From a rational polygon to a certified odd cover of the plane by its translates.

Pipeline: normalize to an integer polygon, group edges into direction
classes, collect marker sets, search a stable weighting that makes some
direction active, write P ⊛ Z as an xor of stripe patterns, and pick the
finite set U that oddly covers that xor.  The cover is {P + z + u}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

import numpy as np

from .geometry import (
    AffineMap,
    IntegerPolygon,
    Lattice2,
    Location,
    RationalPolygon,
    ValidationError,
    Vec2,
    canonical_sign,
    lattice_points_on_segment,
    normalize_polygon,
    on_segment,
    point_in_polygon,
    polygon_area,
    primitive_direction,
)
from .parity import odd_area, subdivide_polygons
from .stripes import (
    Membership,
    StripePattern,
    StripeXor,
    WeightedStripeTerm,
    check_full_cover,
    stripes2_translates,
    xor_eval,
)
from .sweep import Window, clip_segment
from .weighting import (
    MAX_LEVEL,
    FiniteSetFamily,
    LinearFunctionalZd,
    StableWeighting,
    find_weighting,
    period_table,
)

IntPoint = tuple[int, int]


@dataclass(frozen=True)
class DirectionClass:
    d: IntPoint
    normal: IntPoint
    edges: tuple[int, ...]

    @property
    def v(self) -> Vec2:
        return Vec2(*self.d)

    @property
    def n(self) -> Vec2:
        return Vec2(*self.normal)


@dataclass(frozen=True)
class MarkerSet:
    direction: DirectionClass
    points: tuple[IntPoint, ...]

    def negated(self) -> frozenset[IntPoint]:
        return frozenset((-x, -y) for x, y in self.points)


def direction_classes(P: IntegerPolygon) -> list[DirectionClass]:
    """One class per family of parallel edges, in order of first appearance."""
    found: dict[IntPoint, list[int]] = {}
    for i, (a, b) in enumerate(P.polygon.edges()):
        d = primitive_direction(b - a).as_ints()
        found.setdefault(d, []).append(i)
    out = []
    for d, edges in found.items():
        normal = canonical_sign((-d[1], d[0]))
        out.append(DirectionClass(d, normal, tuple(edges)))
    return out


def marker_sets(P: IntegerPolygon, classes: Sequence[DirectionClass] | None = None) -> list[MarkerSet]:
    """Lattice points z with z and z + v_d on one closed edge of class d."""
    classes = direction_classes(P) if classes is None else classes
    edges = list(P.polygon.edges())
    out = []
    for cls in classes:
        pts: list[IntPoint] = []
        for i in cls.edges:
            a, b = edges[i]
            for z in lattice_points_on_segment(a, b):
                if on_segment(z + cls.v, a, b):
                    pts.append(z.as_ints())
        out.append(MarkerSet(cls, tuple(sorted(set(pts)))))
    return out


@dataclass(frozen=True)
class Analysis:
    polygon: IntegerPolygon
    affine: AffineMap
    classes: tuple[DirectionClass, ...]
    markers: tuple[MarkerSet, ...]
    weighting: StableWeighting
    active: tuple[bool, ...]


def active_directions(P: IntegerPolygon, max_level: int = MAX_LEVEL) -> tuple[StableWeighting, tuple[bool, ...]]:
    markers = marker_sets(P)
    search = find_weighting(FiniteSetFamily([m.negated() for m in markers]), max_level)
    return search.weighting, search.active


def analyze(P: RationalPolygon, max_level: int = MAX_LEVEL) -> Analysis:
    Q, affine = normalize_polygon(P)
    classes = direction_classes(Q)
    markers = marker_sets(Q, classes)
    search = find_weighting(FiniteSetFamily([m.negated() for m in markers]), max_level)
    return Analysis(Q, affine, tuple(classes), tuple(markers), search.weighting, search.active)


# ---------------------------------------------------------------------------
# generic points and lattice enumeration

_PRIME = 1_000_003


def _is_generic(x: Vec2, normals: Sequence[Vec2], shifts: Sequence[Vec2]) -> bool:
    return all((n.dot(x - u)).denominator != 1 for n in normals for u in shifts)


def generic_point(rng: random.Random, window: Window, normals: Sequence[Vec2], shifts: Sequence[Vec2] = (Vec2(0, 0),),
                  retries: int = 64) -> Vec2:
    """Random rational point of ``window`` off every line n·(x - u) ∈ Z."""
    for _ in range(retries):
        x = Vec2(
            window.x0 + (window.x1 - window.x0) * Fraction(rng.randrange(1, _PRIME), _PRIME),
            window.y0 + (window.y1 - window.y0) * Fraction(rng.randrange(1, _PRIME), _PRIME),
        )
        if _is_generic(x, normals, shifts):
            return x
    # deterministic perturbation: denominators avoiding all normal/shift denominators
    q = _PRIME
    while True:
        q = q * 7 + 1
        x = Vec2(window.x0 + Fraction(1, q), window.y0 + Fraction(1, q * q))
        if _is_generic(x, normals, shifts):
            return x


def _translates_meeting(P: RationalPolygon, w: StableWeighting, window: Window, shift: Vec2 = Vec2(0, 0)) -> list[IntPoint]:
    """z ∈ Z with the box of P + z + shift meeting the window."""
    bx0, by0, bx1, by1 = P.bbox()
    xs = range(floor(window.x0 - bx1 - shift.x), ceil(window.x1 - bx0 - shift.x) + 1)
    ys = range(floor(window.y0 - by1 - shift.y), ceil(window.y1 - by0 - shift.y) + 1)
    box = (bx0, by0, bx1, by1)
    out = []
    for zy in ys:
        for zx in xs:
            if not w.contains((zx, zy)):
                continue
            t = Vec2(zx, zy) + shift
            if window.meets_box(box[0] + t.x, box[1] + t.y, box[2] + t.x, box[3] + t.y):
                out.append((zx, zy))
    return out


def parity_of_Z_cover(P: RationalPolygon, w: StableWeighting, x: Vec2) -> int | None:
    """|{z ∈ Z : x ∈ P + z}| mod 2, or None when x lies on a translate's boundary."""
    bx0, by0, bx1, by1 = P.bbox()
    count = 0
    for zy in range(floor(x.y - by1), ceil(x.y - by0) + 1):
        for zx in range(floor(x.x - bx1), ceil(x.x - bx0) + 1):
            if not w.contains((zx, zy)):
                continue
            loc = point_in_polygon(P, x - Vec2(zx, zy))
            if loc is Location.BOUNDARY:
                return None
            count += loc is Location.INTERIOR
    return count & 1


def stripe_representation(P: IntegerPolygon, classes: Sequence[DirectionClass], weighting: StableWeighting,
                          active: Sequence[bool], seed: int = 0) -> StripeXor:
    """P ⊛ Z as an xor of unit stripes, one per active class, calibrated at a generic point."""
    stripes = [StripePattern(c.n, 0) for c, a in zip(classes, active) if a]
    if not stripes:
        raise ValidationError("no active direction")
    rng = random.Random(seed)
    x0 = generic_point(rng, Window(0, 0, 1, 1), [c.n for c in classes])
    parity = parity_of_Z_cover(P.polygon, weighting, x0)
    assert parity is not None
    T = StripeXor(stripes)
    if (xor_eval(T, x0) is Membership.IN) != bool(parity):
        T = T.complement()
    return T


# ---------------------------------------------------------------------------
# the cover


@dataclass(frozen=True)
class OddCover:
    """Cover {P + z + u : z ∈ Z, u ∈ U} of the plane in the normalized frame.

    ``affine`` maps the input polygon onto ``polygon``; Z is the support of
    ``weighting``.  ``area_label`` names the area that enters the density
    bound.
    """

    polygon: IntegerPolygon
    affine: AffineMap
    weighting: StableWeighting
    U: tuple[Vec2, ...]
    stripes: StripeXor
    period: Lattice2
    density: Fraction
    max_degree: int
    degrees: tuple[int, ...]
    classes: tuple[DirectionClass, ...] = ()
    active: tuple[bool, ...] = ()
    area_label: str = "normalized"

    @property
    def bound(self) -> Fraction:
        return 1 / self.density

    @property
    def area(self) -> Fraction:
        return polygon_area(self.polygon.polygon)

    @property
    def k(self) -> int:
        return self.weighting.k

    @property
    def radix(self) -> int:
        return self.weighting.L.radix

    def window(self) -> Window:
        """Fundamental domain [0, 2^k] x [0, 1] of the period lattice."""
        return Window(0, 0, self.weighting.modulus, 1)

    def stripe_normals(self) -> list[Vec2]:
        """Normals of every line that can carry a translate's edge."""
        if self.classes:
            return [c.n for c in self.classes]
        return [c.n for c in direction_classes(self.polygon)]


def period_lattice(w: StableWeighting) -> Lattice2:
    return Lattice2((w.modulus, 0), (-w.L.radix, 1))


def density_formula(area: Fraction, U_size: int, w: StableWeighting) -> Fraction:
    return area * U_size * len(w.residues) / w.modulus


def degree_profile(P: RationalPolygon, w: StableWeighting, U: Sequence[Vec2], window: Window) -> tuple[int, ...]:
    """Sorted set of cover degrees over the window, from an exact subdivision."""
    polys = [P.translate(Vec2(*z) + u) for u in U for z in _translates_meeting(P, w, window, u)]
    region = subdivide_polygons(polys, window)
    return tuple(sorted(region.degrees()))


def build_cover(P: RationalPolygon, max_level: int = MAX_LEVEL, seed: int = 0) -> OddCover:
    a = analyze(P, max_level)
    if not any(a.active):
        raise AssertionError("no active direction class; the weighting search is broken")
    T = stripe_representation(a.polygon, a.classes, a.weighting, a.active, seed)
    U = tuple(stripes2_translates([WeightedStripeTerm(s) for s in T.stripes]))
    area = polygon_area(a.polygon.polygon)
    density = density_formula(area, len(U), a.weighting)
    c = len(a.classes)
    if density > area * max(2, 2 ** (c - 1)):
        raise AssertionError(f"density {density} exceeds the class-count bound")
    w = a.weighting
    degrees = degree_profile(a.polygon.polygon, w, U, Window(0, 0, w.modulus, 1))
    return OddCover(
        polygon=a.polygon,
        affine=a.affine,
        weighting=w,
        U=U,
        stripes=T,
        period=period_lattice(w),
        density=density,
        max_degree=max(degrees),
        degrees=degrees,
        classes=a.classes,
        active=a.active,
    )


def triangle_half_lattice_cover(a, b, c) -> OddCover:
    """Translates of a triangle by the lattice spanned by half its edge vectors.

    In the frame where the triangle is (0,0), (2,0), (0,2) this lattice is
    Z^2; every point is covered once or three times.
    """
    a, b, c = (p if isinstance(p, Vec2) else Vec2(*p) for p in (a, b, c))
    e1, e2 = (b - a) / 2, (c - a) / 2
    if e1.cross(e2) == 0:
        raise ValidationError("degenerate triangle")
    forward = AffineMap.linear(e1.x, e2.x, e1.y, e2.y, a.x, a.y).inverse()
    poly = RationalPolygon([forward(a), forward(b), forward(c)])
    P = IntegerPolygon(poly, normalized=False)
    w = StableWeighting.build(0, LinearFunctionalZd.from_radix(1, 2))
    U = (Vec2(0, 0),)
    density = density_formula(polygon_area(poly), 1, w)
    degrees = degree_profile(poly, w, U, Window(0, 0, 1, 1))
    return OddCover(
        polygon=P,
        affine=forward,
        weighting=w,
        U=U,
        stripes=StripeXor.full_plane(),
        period=period_lattice(w),
        density=density,
        max_degree=max(degrees),
        degrees=degrees,
        classes=tuple(direction_classes(P)),
        active=(),
        area_label="frame",
    )


# ---------------------------------------------------------------------------
# verification


@dataclass
class LayerResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    counterexample: Vec2 | None = None


@dataclass
class CoverReport:
    layers: list[LayerResult]

    @property
    def ok(self) -> bool:
        return all(layer.ok for layer in self.layers)

    def layer(self, name: str) -> LayerResult:
        return next(layer for layer in self.layers if layer.name == name)


def line_cuts(n: Vec2, window: Window) -> list[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]]:
    """Segments of the lines n·x ∈ Z crossing the window."""
    corners = [Vec2(window.x0, window.y0), Vec2(window.x1, window.y0), Vec2(window.x0, window.y1), Vec2(window.x1, window.y1)]
    vals = [n.dot(c) for c in corners]
    out = []
    for j in range(floor(min(vals)), ceil(max(vals)) + 1):
        if n.y != 0:
            p = (window.x0 - 1, (j - n.x * (window.x0 - 1)) / n.y)
            q = (window.x1 + 1, (j - n.x * (window.x1 + 1)) / n.y)
        else:
            p = (Fraction(j) / n.x, window.y0 - 1)
            q = (Fraction(j) / n.x, window.y1 + 1)
        clipped = clip_segment(p, q, window)
        if clipped is not None:
            out.append(clipped)
    return out


def check_stripe_cells(cover: OddCover) -> LayerResult:
    """P ⊛ Z equals the stripe xor on every cell of one period window."""
    gens = (cover.period.g1, cover.period.g2)
    # shifting by g complements stripe s exactly when n_s·g is odd
    periodic = all(sum(s.normal.dot(Vec2(*g)) for s in cover.stripes.stripes) % 2 == 0 for g in gens)
    window = cover.window()
    P = cover.polygon.polygon
    polys = [P.translate(Vec2(*z)) for z in _translates_meeting(P, cover.weighting, window)]
    cuts = [c for s in cover.stripes.stripes for c in line_cuts(s.normal, window)]
    region = subdivide_polygons(polys, window, cuts)
    bad = None
    for cell in region.cells:
        m = xor_eval(cover.stripes, cell.sample)
        if m is Membership.BOUNDARY or (m is Membership.IN) != bool(cell.parity):
            bad = Vec2(*cell.sample)
            break
    ok = periodic and bad is None
    return LayerResult("stripe-cells", ok, {"cells": len(region.cells), "periodic": periodic}, bad)


def check_stripe_cover(cover: OddCover, samples: int, seed: int) -> LayerResult:
    terms = [WeightedStripeTerm(s) for s in cover.stripes.stripes]
    r = check_full_cover(terms, cover.U, samples=min(samples, 2000), seed=seed, constant=cover.stripes.complemented)
    detail = {"samples": r.samples, "failures": r.failures}
    if r.exact is not None:
        detail.update(lines=r.exact.lines, cells=r.exact.cells, cells_in=r.exact.cells_in)
    return LayerResult("stripe-cover", r.ok, detail, r.counterexample)


def _sample_degrees(cover: OddCover, xs: np.ndarray, ys: np.ndarray, q: int) -> np.ndarray:
    """Cover degree at the points (xs/q, ys/q), vectorized over points.

    Callers must pass points off every edge line of every translate.
    """
    P = cover.polygon.polygon
    w = cover.weighting
    table = period_table(w.k).astype(bool)
    mod, r = w.modulus, w.L.radix
    verts = [v.as_ints() for v in P.vertices]
    bx0, by0, bx1, by1 = (int(c) for c in P.bbox())
    deg = np.zeros(len(xs), dtype=np.int64)
    for u in cover.U:
        den = u.x.denominator * u.y.denominator
        Q = q * den
        # y = x - u with denominator Q
        px = xs * den - int(u.x * Q)
        py = ys * den - int(u.y * Q)
        fx, fy = np.floor_divide(px, Q), np.floor_divide(py, Q)
        rx, ry = px - fx * Q, py - fy * Q
        # candidate z = floor(y) - j, point y - z = frac(y) + j
        for jy in range(by0 - 1, by1 + 1):
            for jx in range(bx0 - 1, bx1 + 1):
                zx, zy = fx - jx, fy - jy
                inZ = table[np.mod(zx + r * zy, mod)]
                X, Y = rx + jx * Q, ry + jy * Q
                inside = np.zeros(len(xs), dtype=bool)
                for i in range(len(verts)):
                    ax, ay = verts[i]
                    cx, cy = verts[(i + 1) % len(verts)]
                    ax, ay, cx, cy = ax * Q, ay * Q, cx * Q, cy * Q
                    crosses = (ay > Y) != (cy > Y)
                    # x-coordinate of the crossing compared without division
                    lhs = (X - ax) * (cy - ay)
                    rhs = (cx - ax) * (Y - ay)
                    left = np.where(cy > ay, lhs < rhs, lhs > rhs)
                    inside ^= crosses & left
                deg += inZ & inside
    return deg


def sample_cover_degrees(cover: OddCover, samples: int, seed: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Generic random points of the period window and their exact cover degrees."""
    q = 10_007
    window = cover.window()
    rng = np.random.default_rng(seed)
    normals = [n.as_ints() for n in cover.stripe_normals()]
    xs_all, ys_all = [], []
    need = samples
    while need > 0:
        xs = rng.integers(int(window.x0 * q) + 1, int(window.x1 * q), size=2 * need + 16, dtype=np.int64)
        ys = rng.integers(int(window.y0 * q) + 1, int(window.y1 * q), size=2 * need + 16, dtype=np.int64)
        ok = np.ones(len(xs), dtype=bool)
        for u in cover.U:
            den = u.x.denominator * u.y.denominator
            for a, b in normals:
                # n·(x - u) ∈ Z  <=>  q*den divides a*(xs*den - ux*q*den) + b*(...)
                t = a * (xs * den - int(u.x * q * den)) + b * (ys * den - int(u.y * q * den))
                ok &= np.mod(t, q * den) != 0
        xs, ys = xs[ok][:need], ys[ok][:need]
        xs_all.append(xs)
        ys_all.append(ys)
        need -= len(xs)
    xs, ys = np.concatenate(xs_all), np.concatenate(ys_all)
    return xs, ys, _sample_degrees(cover, xs, ys, q), q


def check_samples(cover: OddCover, samples: int, seed: int) -> LayerResult:
    xs, ys, deg, q = sample_cover_degrees(cover, samples, seed)
    even = np.flatnonzero(deg % 2 == 0)
    over = np.flatnonzero(deg > cover.max_degree)
    bad = even[0] if len(even) else (over[0] if len(over) else None)
    cx = None if bad is None else Vec2(Fraction(int(xs[bad]), q), Fraction(int(ys[bad]), q))
    values = sorted({int(d) for d in np.unique(deg)})
    detail = {"samples": int(len(deg)), "even": int(len(even)), "above_max": int(len(over)), "degrees": values}
    return LayerResult("samples", bad is None, detail, cx)


def windowed_count(cover: OddCover, n: int) -> int:
    """|{(z, u) : z + u ∈ [0, n]^2}| in the normalized frame."""
    w = cover.weighting
    table = period_table(w.k).astype(bool)
    total = 0
    for u in cover.U:
        xs = np.arange(ceil(-u.x), floor(n - u.x) + 1, dtype=np.int64)
        ys = np.arange(ceil(-u.y), floor(n - u.y) + 1, dtype=np.int64)
        if len(xs) == 0 or len(ys) == 0:
            continue
        L = xs[None, :] + w.L.radix * ys[:, None]
        total += int(table[np.mod(L, w.modulus)].sum())
    return total


def windowed_density(cover: OddCover, n: int) -> Fraction:
    return Fraction(windowed_count(cover, n)) * cover.area / (n * n)


def windowed_density_original(cover: OddCover, n: int) -> Fraction:
    """Same count in the input frame: translates whose reference point lies in [0, n]^2."""
    inv = cover.affine.inverse()
    w = cover.weighting
    corners = [cover.affine.apply_linear(Vec2(x, y)) for x in (0, n) for y in (0, n)]
    x0, x1 = min(c.x for c in corners), max(c.x for c in corners)
    y0, y1 = min(c.y for c in corners), max(c.y for c in corners)
    count = 0
    for u in cover.U:
        for zy in range(ceil(y0 - u.y), floor(y1 - u.y) + 1):
            for zx in range(ceil(x0 - u.x), floor(x1 - u.x) + 1):
                if not w.contains((zx, zy)):
                    continue
                p = inv.apply_linear(Vec2(zx, zy) + u)
                if 0 <= p.x <= n and 0 <= p.y <= n:
                    count += 1
    orig_area = cover.area / abs(cover.affine.det)
    return count * orig_area / (n * n)


def density_error_constant(cover: OddCover) -> Fraction:
    """C with |windowed_density(n) - density| <= C / n for all n >= 1."""
    return 3 * cover.area * len(cover.U) * cover.weighting.modulus


def check_density(cover: OddCover, sizes: Sequence[int] = (8, 16, 32, 64)) -> LayerResult:
    C = density_error_constant(cover)
    rows = []
    ok = True
    for n in sizes:
        rho = windowed_density(cover, n)
        err = abs(rho - cover.density)
        rows.append((n, rho, err))
        ok &= err <= C / n
    return LayerResult("density", ok, {"constant": C, "windows": rows})


def density_windows(n: int) -> list[int]:
    return sorted({max(1, n >> s) for s in (3, 2, 1, 0)})


def verify_cover(cover: OddCover, samples: int = 10_000, seed: int = 0, window: int = 64) -> CoverReport:
    """Run every certification layer; the cover is valid when all of them pass."""
    layers = [
        check_stripe_cells(cover),
        check_stripe_cover(cover, samples, seed),
        check_samples(cover, samples, seed),
        check_density(cover, density_windows(window)),
    ]
    degree_ok = all(d % 2 == 1 for d in cover.degrees) and cover.max_degree == max(cover.degrees)
    layers.append(LayerResult("degrees", degree_ok, {"degrees": list(cover.degrees)}))
    formula = density_formula(cover.area, len(cover.U), cover.weighting)
    layers.append(LayerResult("invariants", formula == cover.density and cover.density >= 1 and cover.bound <= 1
                              and cover.max_degree >= cover.density, {"density": formula}))
    return CoverReport(layers)


def verify_tiling(P: RationalPolygon, g1: IntPoint, g2: IntPoint) -> tuple[bool, Fraction]:
    """Whether lattice translates of an integer polygon tile the plane; returns the density too."""
    lattice = Lattice2(g1, g2)
    corners = [Vec2(0, 0), Vec2(*g1), Vec2(*g2), Vec2(*g1) + Vec2(*g2)]
    window = Window(min(c.x for c in corners), min(c.y for c in corners),
                    max(c.x for c in corners), max(c.y for c in corners))
    bx0, by0, bx1, by1 = P.bbox()
    polys = []
    for zy in range(floor(window.y0 - by1), ceil(window.y1 - by0) + 1):
        for zx in range(floor(window.x0 - bx1), ceil(window.x1 - bx0) + 1):
            if lattice.contains((zx, zy)):
                polys.append(P.translate(Vec2(zx, zy)))
    region = subdivide_polygons(polys, window)
    density = polygon_area(P) / lattice.covolume
    return region.degrees() == {1}, density


# ---------------------------------------------------------------------------
# odd compression and the boundary-parity property


@dataclass(frozen=True)
class CompressionResult:
    ratio: Fraction
    bound: Fraction
    passed: bool


def compression_check(P: RationalPolygon, K: Sequence, cover: OddCover | None = None) -> CompressionResult:
    """A(P ⊛ K) / A(P) against the bound 1/density of a constructed cover."""
    K = [v if isinstance(v, Vec2) else Vec2(*v) for v in K]
    if len(K) % 2 == 0:
        raise ValidationError(f"K must have odd cardinality, got {len(K)} translates")
    cover = build_cover(P) if cover is None else cover
    ratio = odd_area(P, K) / polygon_area(P)
    return CompressionResult(ratio, cover.bound, ratio >= cover.bound)


@dataclass(frozen=True)
class EdgeCount:
    direction: int
    start: Vec2
    end: Vec2
    geometric: int
    markers: int
    active: bool


def _edge_in_boundary(P: RationalPolygon, a: Vec2, b: Vec2) -> bool:
    return any(on_segment(a, p, q) and on_segment(b, p, q) for p, q in P.edges())


def random_arrangement_edge(cover: OddCover, rng: random.Random, index: int) -> tuple[Vec2, Vec2, Vec2]:
    """A lattice point p and an edge of the full line arrangement inside [p, p + v_d]."""
    cls = cover.classes[index]
    p = Vec2(rng.randint(-20, 20), rng.randint(-20, 20))
    v = cls.v
    cuts = {Fraction(0), Fraction(1)}
    for other in cover.classes:
        if other is cls:
            continue
        s = other.n.dot(v)
        base = other.n.dot(p)
        for j in range(floor(min(base, base + s)), ceil(max(base, base + s)) + 1):
            t = (j - base) / s
            if 0 < t < 1:
                cuts.add(t)
    ts = sorted(cuts)
    i = rng.randrange(len(ts) - 1)
    return p, p + v * ts[i], p + v * ts[i + 1]


def boundary_parity_counts(cover: OddCover, edges_per_class: int, seed: int = 0) -> list[EdgeCount]:
    """Count translates P + z (z ∈ Z) whose boundary contains random arrangement edges.

    Each count is done twice: by direct incidence tests and through marker
    sets, where the edge lies on ∂(P + z) exactly when p - z is a marker.
    """
    rng = random.Random(seed)
    P = cover.polygon.polygon
    markers = marker_sets(cover.polygon, cover.classes)
    bx0, by0, bx1, by1 = P.bbox()
    out = []
    for index, cls in enumerate(cover.classes):
        for _ in range(edges_per_class):
            p, a, b = random_arrangement_edge(cover, rng, index)
            geometric = 0
            for zy in range(floor(min(a.y, b.y) - by1), ceil(max(a.y, b.y) - by0) + 1):
                for zx in range(floor(min(a.x, b.x) - bx1), ceil(max(a.x, b.x) - bx0) + 1):
                    if cover.weighting.contains((zx, zy)) and _edge_in_boundary(P, a - Vec2(zx, zy), b - Vec2(zx, zy)):
                        geometric += 1
            px, py = p.as_ints()
            via_markers = sum(1 for mx, my in markers[index].points if cover.weighting.contains((px - mx, py - my)))
            out.append(EdgeCount(index, a, b, geometric, via_markers, cover.active[index]))
    return out
