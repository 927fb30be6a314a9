"""Exact planar primitives.

Coordinates are exact rationals: Python ``int`` when integral, otherwise
``fractions.Fraction``.  Both compare and hash consistently, so mixed values
are fine everywhere.  Nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]


class GeometryError(Exception):
    """Base class for geometric failures."""


class CollinearOverlap(GeometryError):
    """Two segments share more than one point."""


class VerticalBase(GeometryError):
    """The base endpoints have the same x-coordinate."""


class GeneralPositionViolation(GeometryError):
    """An exact predicate hit a degeneracy the algorithm assumes away."""


def scalar(value) -> Scalar:
    """Exact rational from an int, Fraction, float or decimal string.

    Integral results are returned as ``int``.
    """
    if isinstance(value, int):
        return value
    f = value if isinstance(value, Fraction) else Fraction(value)
    return f.numerator if f.denominator == 1 else f


def canon(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class Point(NamedTuple):
    x: Scalar
    y: Scalar

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def point(x, y) -> Point:
    return Point(scalar(x), scalar(y))


@dataclass(frozen=True)
class DirSegment:
    src: Point
    dst: Point
    tag: str = "other"  # one of "L", "R", "tree", "other"

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError("degenerate segment: src == dst")

    @property
    def x_span(self) -> Tuple[Scalar, Scalar]:
        a, b = self.src.x, self.dst.x
        return (a, b) if a <= b else (b, a)

    @property
    def x_lo(self) -> Scalar:
        return min(self.src.x, self.dst.x)

    @property
    def x_hi(self) -> Scalar:
        return max(self.src.x, self.dst.x)

    def y_at(self, x: Scalar) -> Scalar:
        (x0, y0), (x1, y1) = self.src, self.dst
        if x0 == x1:
            raise ValueError("vertical segment has no unique y")
        return canon(y0 + Fraction(y1 - y0) * (x - x0) / (x1 - x0))

    def reversed(self) -> "DirSegment":
        return DirSegment(self.dst, self.src, self.tag)


@dataclass(frozen=True)
class AffineShear:
    """The map (x, y) -> (x, y - (x - x0) * slope)."""

    x0: Scalar
    slope: Scalar

    def forward(self, p) -> Point:
        x, y = p
        return Point(x, canon(y - (x - self.x0) * self.slope))

    def inverse(self, p) -> Point:
        x, y = p
        return Point(x, canon(y + (x - self.x0) * self.slope))

    @property
    def is_identity(self) -> bool:
        return self.slope == 0


def cross(p, q, r) -> Scalar:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orient(p, q, r) -> int:
    """+1 if p, q, r turn counterclockwise, -1 if clockwise, 0 if collinear."""
    d = cross(p, q, r)
    return (d > 0) - (d < 0)


def triangle_area(p, q, r) -> Scalar:
    return canon(Fraction(abs(cross(p, q, r)), 2))


def _on_segment(p, a, b) -> bool:
    # p is known to be collinear with a, b
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def line_intersection(p1, p2, q1, q2) -> Optional[Point]:
    """Intersection of the lines through (p1, p2) and (q1, q2); None if parallel."""
    d1x, d1y = p2[0] - p1[0], p2[1] - p1[1]
    d2x, d2y = q2[0] - q1[0], q2[1] - q1[1]
    den = d1x * d2y - d1y * d2x
    if den == 0:
        return None
    t = Fraction((q1[0] - p1[0]) * d2y - (q1[1] - p1[1]) * d2x, 1) / den
    return Point(canon(p1[0] + t * d1x), canon(p1[1] + t * d1y))


def segment_intersection(a: DirSegment, b: DirSegment) -> Optional[Point]:
    """The single common point of two closed segments, or None.

    Raises CollinearOverlap when the segments share more than one point.
    """
    p1, p2, q1, q2 = a.src, a.dst, b.src, b.dst
    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 == o2 == 0:
        shared = {p for p in (q1, q2) if _on_segment(p, p1, p2)}
        shared |= {p for p in (p1, p2) if _on_segment(p, q1, q2)}
        if not shared:
            return None
        if len(shared) > 1:
            raise CollinearOverlap(f"{a} overlaps {b}")
        return Point(*shared.pop())
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    if o1 == 0:
        return q1
    if o2 == 0:
        return q2
    if o3 == 0:
        return p1
    if o4 == 0:
        return p2
    return line_intersection(p1, p2, q1, q2)


def shear_to_horizontal(raw_vertices: Sequence) -> Tuple[list, AffineShear]:
    """Shear so the segment raw_vertices[0] -> raw_vertices[1] becomes horizontal.

    Vertical lines map to themselves and areas are unchanged.
    """
    (x0, y0), (x1, y1) = raw_vertices[0], raw_vertices[1]
    if x0 == x1:
        raise VerticalBase(f"base endpoints share x = {x0}")
    shear = AffineShear(canon(x0), canon(Fraction(y1 - y0) / (x1 - x0)))
    return [shear.forward(p) for p in raw_vertices], shear
