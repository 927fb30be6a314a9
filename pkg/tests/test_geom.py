from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from terrain_lit.geom import (
    AffineShear,
    CollinearOverlap,
    DirSegment,
    Point,
    VerticalBase,
    canon,
    cross,
    line_intersection,
    orient,
    point,
    scalar,
    segment_intersection,
    shear_to_horizontal,
    triangle_area,
)

coords = st.integers(-50, 50)
points = st.builds(Point, coords, coords)


def test_scalar_is_exact():
    assert scalar("0.1") == Fraction(1, 10)
    assert scalar("2.50") == Fraction(5, 2)
    assert type(scalar("3.0")) is int
    assert scalar("-1e2") == -100


def test_canon_collapses_integral_fractions():
    assert type(canon(Fraction(6, 3))) is int
    assert canon(Fraction(1, 3)) == Fraction(1, 3)


def test_orient_signs():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (0, 1), (1, 0)) == -1
    assert orient((0, 0), (1, 1), (2, 2)) == 0


def test_triangle_area_t3_candidate():
    assert triangle_area((0, 0), (10, 0), (5, 2)) == 10


def test_segment_intersection_cases():
    a = DirSegment(point(0, 0), point(4, 4))
    b = DirSegment(point(0, 4), point(4, 0))
    assert segment_intersection(a, b) == (2, 2)
    c = DirSegment(point(5, 5), point(6, 7))
    assert segment_intersection(a, c) is None
    d = DirSegment(point(4, 4), point(9, 0))
    assert segment_intersection(a, d) == (4, 4)
    with pytest.raises(CollinearOverlap):
        segment_intersection(a, DirSegment(point(2, 2), point(6, 6)))


def test_line_intersection_fraction():
    p = line_intersection((0, 0), (3, 1), (0, 1), (1, 0))
    assert p == (Fraction(3, 4), Fraction(1, 4))
    assert line_intersection((0, 0), (1, 1), (0, 1), (1, 2)) is None


def test_dirsegment_y_at_and_reverse():
    s = DirSegment(point(0, 0), point(4, 2), "L")
    assert s.y_at(1) == Fraction(1, 2)
    assert s.reversed().src == s.dst
    assert s.x_span == (0, 4)
    with pytest.raises(ValueError):
        DirSegment(point(1, 1), point(1, 1))


def test_vertical_base_rejected():
    with pytest.raises(VerticalBase):
        shear_to_horizontal([(1, 0), (1, 5), (0, 3)])


@given(points, points, points)
def test_orient_antisymmetric(p, q, r):
    assert orient(p, q, r) == -orient(q, p, r) == -orient(p, r, q)


@given(st.lists(points, min_size=3, max_size=10), coords.filter(lambda v: v != 0), coords)
def test_shear_roundtrip_and_area(pts, dx, dy):
    pts = [Point(0, 0), Point(dx, dy)] + pts
    sheared, shear = shear_to_horizontal(pts)
    assert sheared[0].y == sheared[1].y
    assert [shear.inverse(p) for p in sheared] == pts
    for i in range(len(pts) - 2):
        assert triangle_area(*sheared[i : i + 3]) == triangle_area(*pts[i : i + 3])


@given(points, points, points, points)
def test_segment_intersection_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    s, t = DirSegment(a, b), DirSegment(c, d)
    try:
        r = segment_intersection(s, t)
    except CollinearOverlap:
        with pytest.raises(CollinearOverlap):
            segment_intersection(t, s)
        return
    assert r == segment_intersection(t, s)
    if r is not None:
        assert orient(a, b, r) == 0 and orient(c, d, r) == 0


def test_cross_is_twice_area():
    assert cross((0, 0), (2, 0), (0, 2)) == 4
    assert AffineShear(0, 0).is_identity
