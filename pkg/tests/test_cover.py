import random
from dataclasses import replace
from fractions import Fraction as F
from math import floor, ceil

import pytest

from oddcover.corpus import NAMED, corpus, random_rational_polygon
from oddcover.cover import (
    IntegerPolygon,
    active_directions,
    boundary_parity_counts,
    build_cover,
    compression_check,
    direction_classes,
    marker_sets,
    parity_of_Z_cover,
    sample_cover_degrees,
    stripe_representation,
    triangle_half_lattice_cover,
    verify_cover,
    verify_tiling,
    windowed_density,
    density_error_constant,
)
from oddcover.geometry import (
    Location,
    RationalPolygon,
    ValidationError,
    Vec2,
    lattice_points_on_segment,
    normalize_polygon,
    on_segment,
    point_in_polygon,
)
from oddcover.parity import odd_area_incl_excl
from oddcover.stripes import Membership, xor_eval

from conftest import random_point

CORPUS = corpus()
POLY = {name: RationalPolygon(vs) for name, vs in NAMED.items()}


def integer(name):
    return normalize_polygon(POLY[name])[0]


def test_direction_class_examples():
    sq = direction_classes(integer("unit-square"))
    assert [(c.d, c.normal) for c in sq] == [((1, 0), (0, 1)), ((0, 1), (1, 0))]
    tri = direction_classes(integer("unit-triangle"))
    assert [(c.d, c.normal) for c in tri] == [((1, 0), (0, 1)), ((1, -1), (1, 1)), ((0, 1), (1, 0))]
    hexagon = direction_classes(integer("symmetric-hexagon"))
    assert len(hexagon) == 3 and all(len(c.edges) == 2 for c in hexagon)


def brute_markers(P: IntegerPolygon, cls):
    x0, y0, x1, y1 = (int(c) for c in P.polygon.bbox())
    edges = list(P.polygon.edges())
    out = set()
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            z = Vec2(x, y)
            for i in cls.edges:
                a, b = edges[i]
                if on_segment(z, a, b) and on_segment(z + cls.v, a, b):
                    out.add((x, y))
    return tuple(sorted(out))


def test_marker_set_examples():
    sq = marker_sets(integer("unit-square"))
    assert sq[0].points == ((0, 0), (0, 1))
    tri = marker_sets(integer("unit-triangle"))
    assert tri[1].points == ((0, 1),)
    long_edge = IntegerPolygon(RationalPolygon([(0, 0), (3, 0), (0, 1)]))
    assert marker_sets(long_edge)[0].points == ((0, 0), (1, 0), (2, 0))


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_marker_sets_match_enumeration(entry):
    P = normalize_polygon(entry.polygon)[0]
    for m in marker_sets(P):
        assert m.points == brute_markers(P, m.direction)
        assert m.points
        expected = sum(len(lattice_points_on_segment(*list(P.polygon.edges())[i])) - 1 for i in m.direction.edges)
        assert len(m.points) == expected


def test_active_direction_examples():
    w, active = active_directions(integer("unit-triangle"))
    assert w.k == 0 and active == (True, True, True)
    w, active = active_directions(integer("unit-square"))
    assert w.k == 1 and active.count(True) == 1
    assert all(w.contains((x, y)) == ((x + 2 * y) % 2 == 0) for x in range(-4, 5) for y in range(-4, 5))
    w, active = active_directions(integer("symmetric-hexagon"))
    assert w.k >= 1 and any(active)


def test_no_parallel_edges_gives_level_zero_with_lattice_point_rule():
    rng = random.Random(4)
    checked = 0
    while checked < 15:
        P = normalize_polygon(random_rational_polygon(rng, 6, 4))[0]
        classes = direction_classes(P)
        if any(len(c.edges) > 1 for c in classes):
            continue
        checked += 1
        w, active = active_directions(P)
        assert w.k == 0
        edges = list(P.polygon.edges())
        for c, a in zip(classes, active):
            count = len(lattice_points_on_segment(*edges[c.edges[0]]))
            assert a == (count % 2 == 0)


def test_stripe_representation_examples():
    P = integer("unit-triangle")
    w, active = active_directions(P)
    T = stripe_representation(P, direction_classes(P), w, active)
    assert [s.normal for s in T.stripes] == [Vec2(0, 1), Vec2(1, 1), Vec2(1, 0)]
    assert all(s.offset == 0 for s in T.stripes)
    P = integer("unit-square")
    w, active = active_directions(P)
    T = stripe_representation(P, direction_classes(P), w, active)
    assert [(s.normal, s.offset) for s in T.stripes] == [(Vec2(1, 0), 0)]


@pytest.mark.parametrize("name", list(NAMED))
def test_stripes_match_translate_parity_at_random_points(name):
    c = build_cover(POLY[name])
    rng = random.Random(8)
    for _ in range(300):
        x = random_point(rng, -4, 4, 1009)
        parity = parity_of_Z_cover(c.polygon.polygon, c.weighting, x)
        m = xor_eval(c.stripes, x)
        if parity is None or m is Membership.BOUNDARY:
            continue
        assert parity == (m is Membership.IN)


def test_square_cover_is_a_tiling():
    c = build_cover(POLY["unit-square"])
    assert c.density == 1 and c.bound == 1
    assert (len(c.U), len(c.weighting.residues), c.k, c.area) == (2, 1, 1, 1)
    assert c.degrees == (1,)


def test_triangle_cover():
    c = build_cover(POLY["unit-triangle"])
    assert c.density == 2 and c.bound == F(1, 2)
    assert len(c.U) == 4 and c.k == 0
    assert c.degrees == (1, 3)


def test_hexagon_cover_and_tiling():
    c = build_cover(POLY["symmetric-hexagon"])
    assert 1 <= c.density <= c.area * 4
    assert verify_cover(c, samples=2000).ok
    tiles, density = verify_tiling(POLY["symmetric-hexagon"], (2, 1), (1, 2))
    assert tiles and density == 1
    assert not verify_tiling(POLY["symmetric-hexagon"], (1, 0), (0, 1))[0]


def test_half_lattice_triangle_cover():
    c = triangle_half_lattice_cover((0, 0), (1, 0), (0, 1))
    assert c.density == 2 and c.degrees == (1, 3)
    assert verify_cover(c, samples=2000).ok
    with pytest.raises(ValidationError):
        triangle_half_lattice_cover((0, 0), (1, 1), (2, 2))


def half_lattice_degree(a, b, c, x):
    # count z in the lattice spanned by (b-a)/2, (c-a)/2 with x in triangle + z
    e1, e2 = (b - a) / 2, (c - a) / 2
    T = RationalPolygon([a, b, c])
    det = e1.cross(e2)
    # coordinates of x - a in the (e1, e2) basis
    s = (x - a).cross(e2) / det
    t = e1.cross(x - a) / det
    count = 0
    # in (e1, e2) coordinates the triangle is s, t >= 0, s + t <= 2
    for i in range(floor(s) - 2, floor(s) + 1):
        for j in range(floor(t) - 2, floor(t) + 1):
            loc = point_in_polygon(T, x - e1 * i - e2 * j)
            if loc is Location.BOUNDARY:
                return None
            count += loc is Location.INTERIOR
    return count


def test_half_lattice_cover_of_random_triangles():
    rng = random.Random(12)
    for _ in range(5):
        pts = [random_point(rng, -3, 3, 5) for _ in range(3)]
        if (pts[1] - pts[0]).cross(pts[2] - pts[0]) == 0:
            continue
        c = triangle_half_lattice_cover(*pts)
        assert c.density == 2 and c.degrees == (1, 3)
        degrees = set()
        for _ in range(2000):
            d = half_lattice_degree(*pts, random_point(rng, -3, 3, 1009))
            if d is not None:
                degrees.add(d)
        assert degrees <= {1, 3}


def brute_cover_degree(c, x):
    P = c.polygon.polygon
    bx0, by0, bx1, by1 = P.bbox()
    count = 0
    for u in c.U:
        y = x - u
        for zy in range(floor(y.y - by1), ceil(y.y - by0) + 1):
            for zx in range(floor(y.x - bx1), ceil(y.x - bx0) + 1):
                if c.weighting.contains((zx, zy)):
                    loc = point_in_polygon(P, y - Vec2(zx, zy))
                    assert loc is not Location.BOUNDARY
                    count += loc is Location.INTERIOR
    return count


@pytest.mark.parametrize("name", ["unit-triangle", "pentagon", "l-hexagon", "symmetric-hexagon"])
def test_vectorized_degrees_match_point_location(name):
    c = build_cover(POLY[name])
    xs, ys, deg, q = sample_cover_degrees(c, 150, seed=3)
    for x, y, d in zip(xs, ys, deg):
        assert brute_cover_degree(c, Vec2(F(int(x), q), F(int(y), q))) == d


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_corpus_cover_verifies(entry):
    c = build_cover(entry.polygon)
    report = verify_cover(c, samples=10_000, seed=1)
    assert report.ok, [(layer.name, layer.detail) for layer in report.layers if not layer.ok]
    assert any(c.active)
    assert c.density <= c.area * max(2, 2 ** (len(c.classes) - 1))
    assert 1 <= c.density <= c.max_degree
    assert c.density == c.area * len(c.U) * len(c.weighting.residues) / c.weighting.modulus


def test_tampered_cover_fails_verification():
    c = build_cover(POLY["unit-triangle"])
    U = list(c.U)
    U[1] = U[1] + Vec2(F(1, 100), 0)
    report = verify_cover(replace(c, U=tuple(U)), samples=2000)
    assert not report.ok
    bad = report.layer("stripe-cover")
    assert not bad.ok and bad.counterexample is not None
    assert report.layer("samples").counterexample is not None


def test_windowed_density_converges():
    c = build_cover(POLY["unit-triangle"])
    C = density_error_constant(c)
    for n in (4, 8, 16, 32, 64):
        assert abs(windowed_density(c, n) - c.density) <= C / n


def test_compression_examples():
    tri = POLY["unit-triangle"]
    assert compression_check(tri, [(0, 0)]).ratio == 1
    with pytest.raises(ValidationError, match="odd"):
        compression_check(tri, [(0, 0), (1, 0)])
    sq = POLY["unit-square"]
    cover = build_cover(sq)
    rng = random.Random(6)
    for _ in range(30):
        K = [random_point(rng, -1, 1, 4) for _ in range(rng.choice([1, 3, 5]))]
        result = compression_check(sq, K, cover)
        assert result.passed and result.ratio >= 1
        assert result.ratio == odd_area_incl_excl(sq, K)


@pytest.mark.parametrize("entry", CORPUS[:8], ids=lambda e: e.name)
def test_boundary_counts_are_odd_exactly_on_active_lines(entry):
    c = build_cover(entry.polygon)
    for e in boundary_parity_counts(c, 25, seed=5):
        assert e.geometric == e.markers
        assert (e.geometric % 2 == 1) == e.active
