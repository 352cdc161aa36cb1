import random
from fractions import Fraction

from hypothesis import strategies as st

from oddcover.geometry import RationalPolygon, Vec2, orient


def convex_hull(points):
    """Andrew's monotone chain, strict (no collinear points kept)."""
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(pts) < 3:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
points = st.builds(Vec2, rationals, rationals)


@st.composite
def convex_polygons(draw, max_points=8):
    pts = draw(st.lists(points, min_size=3, max_size=max_points))
    hull = convex_hull(pts)
    from hypothesis import assume

    assume(len(hull) >= 3)
    return RationalPolygon(hull)


def offset_sets(min_size=1, max_size=6):
    small = st.fractions(min_value=-2, max_value=2, max_denominator=4)
    return st.lists(st.builds(Vec2, small, small), min_size=min_size, max_size=max_size)


def random_point(rng: random.Random, lo=-5, hi=5, den=997) -> Vec2:
    return Vec2(Fraction(rng.randint(lo * den, hi * den), den), Fraction(rng.randint(lo * den, hi * den), den))


def winding_number(vertices, x: Vec2) -> int:
    """Signed winding number by summing quadrant crossings (independent of the library's test)."""
    w = 0
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        if a.y <= x.y:
            if b.y > x.y and orient(a, b, x) > 0:
                w += 1
        elif b.y <= x.y and orient(a, b, x) < 0:
            w -= 1
    return w


# acceptance results, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
