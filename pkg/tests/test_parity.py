import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from oddcover.geometry import Location, RationalPolygon, ValidationError, polygon_area
from oddcover.parity import (
    Coverage,
    TranslateFamily,
    odd_area,
    odd_area_incl_excl,
    parity_at_point,
    subdivide,
    subdivide_polygons,
)
from oddcover.sweep import Window

from conftest import convex_polygons, offset_sets, random_point

SQUARE = RationalPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
TRIANGLE = RationalPolygon([(0, 0), (1, 0), (0, 1)])
L_SHAPE = RationalPolygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


def test_single_translate_in_window():
    region = subdivide(TranslateFamily(SQUARE, [(0, 0)]), Window(0, 0, 2, 2))
    assert region.odd_area() == 1
    assert region.total_area() == 4


def test_half_overlapping_squares():
    region = subdivide(TranslateFamily(SQUARE, [(0, 0), (F(1, 2), 0)]), Window(-1, -1, 3, 3))
    assert region.odd_area() == 1
    assert region.max_degree() == 2


def test_triple_translate_has_degree_three():
    region = subdivide(TranslateFamily(TRIANGLE, [(0, 0)] * 3), Window(-1, -1, 2, 2))
    assert region.odd_area() == F(1, 2)
    assert region.degrees() == {0, 3}


def test_odd_area_examples():
    assert odd_area(L_SHAPE, [(0, 0)]) == polygon_area(L_SHAPE)
    assert odd_area(TRIANGLE, [(0, 0)] * 3) == F(1, 2)
    assert odd_area(TRIANGLE, [(0, 0), (0, 0)]) == 0
    K = [(0, 0), (F(1, 2), 0), (0, F(1, 2))]
    assert odd_area(TRIANGLE, K) == odd_area_incl_excl(TRIANGLE, K) == F(3, 4)


def test_incl_excl_examples():
    assert odd_area_incl_excl(SQUARE, [(0, 0)]) == 1
    assert odd_area_incl_excl(SQUARE, [(0, 0), (F(1, 2), 0)]) == 1


def test_incl_excl_rejects_nonconvex():
    with pytest.raises(ValidationError):
        odd_area_incl_excl(L_SHAPE, [(0, 0)])


def test_parity_at_point_examples():
    assert parity_at_point(TranslateFamily(SQUARE, [(0, 0)]), (F(1, 2), F(1, 2))) == Coverage(1, 1)
    assert parity_at_point(TranslateFamily(SQUARE, [(0, 0), (0, 0)]), (F(1, 2), F(1, 2))) == Coverage(0, 2)
    assert parity_at_point(TranslateFamily(SQUARE, [(0, 0)]), (0, 0)) is Location.BOUNDARY


def test_degenerate_window_rejected():
    with pytest.raises(ValidationError):
        Window(0, 0, 0, 1)


@given(convex_polygons(max_points=6), offset_sets(max_size=5))
@settings(max_examples=80, deadline=None)
def test_sweep_matches_inclusion_exclusion(P, K):
    assert odd_area(P, K) == odd_area_incl_excl(P, K)


@given(convex_polygons(max_points=6), offset_sets(max_size=4))
@settings(max_examples=40, deadline=None)
def test_cells_partition_window_and_degrees_match_point_counts(P, K):
    family = TranslateFamily(P, K)
    x0, y0, x1, y1 = family.bbox()
    window = Window(x0 - 1, y0 - 1, x1 + 1, y1 + 1)
    region = subdivide(family, window)
    assert region.total_area() == window.area
    for cell in region.cells[:40]:
        assert parity_at_point(family, cell.sample) == Coverage(cell.parity, cell.degree)


def fan_triangles(P):
    v = P.vertices
    out = []
    for i in range(1, len(v) - 1):
        try:
            out.append(RationalPolygon([v[0], v[i], v[i + 1]]))
        except ValidationError:
            pass  # collinear fan triangle has no area
    return out


def test_nonconvex_odd_area_equals_fan_triangle_xor():
    # mod 2, a simple polygon is the xor of its fan triangles
    rng = random.Random(3)
    for _ in range(15):
        K = [random_point(rng, -1, 1, 4) for _ in range(rng.choice([1, 3, 5]))]
        tris = [t.translate(k) for k in K for t in fan_triangles(L_SHAPE)]
        family = TranslateFamily(L_SHAPE, K)
        x0, y0, x1, y1 = family.bbox()
        window = Window(x0 - 1, y0 - 1, x1 + 1, y1 + 1)
        assert odd_area(L_SHAPE, K) == subdivide_polygons(tris, window).odd_area()


def test_odd_area_translation_invariant_and_symmetric():
    rng = random.Random(11)
    for _ in range(20):
        K = [random_point(rng, -2, 2, 3) for _ in range(3)]
        t = random_point(rng, -3, 3, 7)
        base = odd_area(L_SHAPE, K)
        assert odd_area(L_SHAPE, [k + t for k in K]) == base
        assert odd_area(L_SHAPE, list(reversed(K))) == base
        # adding a pair of equal offsets cancels
        assert odd_area(L_SHAPE, K + [K[0], K[0]]) == base
