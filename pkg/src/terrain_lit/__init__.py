"""Largest-area triangle inscribed in a terrain, in O(n log n) time."""

from .apex import SolveReport, solve, solve_detailed
from .geom import Point, point
from .oracle import check_triangle_valid, oracle_solve
from .terrain import GroundedTriangle, Terrain, format_terrain, generate_random, parse_terrain, validate

__all__ = [
    "GroundedTriangle",
    "Point",
    "SolveReport",
    "Terrain",
    "check_triangle_valid",
    "format_terrain",
    "generate_random",
    "oracle_solve",
    "parse_terrain",
    "point",
    "solve",
    "solve_detailed",
    "validate",
]
