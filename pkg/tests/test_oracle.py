import math

import pytest
from hypothesis import given

from terrain_lit.geom import Point
from terrain_lit.oracle import (
    check_triangle_valid,
    geodesic_distances,
    max_triangle_at,
    oracle_boundary,
    oracle_interior,
    oracle_solve,
    two_vertex_lines,
)
from terrain_lit.spt import LEFT, RIGHT, prolongations_for, sweep
from terrain_lit.terrain import GroundedTriangle

from conftest import terrains


def test_fixture_values(t1, t2, t3):
    assert oracle_solve(t1).area == 25
    assert oracle_solve(t2, samples_per_edge=1000).area == 20
    rep = oracle_solve(t3, samples_per_edge=1000)
    assert rep.area == 18 and rep.best.triangle.apex == (7, 6)
    assert oracle_interior(t3).best.area >= 10  # two-vertex lines include more than prolongations


def test_max_triangle_at_vertex(t3):
    tri = max_triangle_at(t3, (7, 6))
    assert (tri.left_foot, tri.right_foot, tri.area) == ((4, 0), (10, 0), 18)
    assert max_triangle_at(t3, (0, 0)) is None


def test_check_triangle_valid(t3):
    good = GroundedTriangle(Point(7, 6), Point(4, 0), Point(10, 0), 18)
    assert check_triangle_valid(t3, good)
    assert not check_triangle_valid(t3, GroundedTriangle(Point(7, 6), Point(4, 0), Point(10, 0), 17))
    assert not check_triangle_valid(t3, GroundedTriangle(Point(7, 6), Point(3, 0), Point(10, 0), 21))
    assert not check_triangle_valid(t3, GroundedTriangle(Point(7, 6), Point(4, 1), Point(10, 0), 18))


def test_geodesic_distances_t3(t3):
    d = geodesic_distances(t3, 0)
    assert d[2] == pytest.approx(math.hypot(5, 2) + math.hypot(2, 4))
    assert d[1] == pytest.approx(10)


def test_samples_validated(t3):
    with pytest.raises(ValueError):
        oracle_boundary(t3, samples_per_edge=1)


@given(terrains(4, 20))
def test_interior_examines_every_prolongation_pair(t):
    L = prolongations_for(sweep(t, LEFT))
    R = prolongations_for(sweep(t, RIGHT))
    rising, falling = two_vertex_lines(t)
    assert len(rising) >= len(L) and len(falling) >= len(R)
    rep = oracle_interior(t)
    if rep is not None:
        assert rep.candidates_examined >= len(L) * len(R)
        assert check_triangle_valid(t, rep.best.triangle)


@given(terrains(4, 16))
def test_deterministic_and_valid(t):
    a, b = oracle_solve(t, 30), oracle_solve(t, 30)
    assert a.best == b.best
    assert check_triangle_valid(t, a.best.triangle)
    assert a.exact_best.area <= a.area
