"""Candidate triangles and the deterministic rule for picking between them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .geom import Point, canon
from .terrain import GroundedTriangle, Terrain

STD_STD, LH_VS_R, RH_VS_L, TOUCHING = "std_std", "Lh_vs_R", "Rh_vs_L", "touching"

@dataclass(frozen=True)
class InteriorApex:
    node: int
    i: int
    j: int
    kind: str = STD_STD


@dataclass(frozen=True)
class BoundaryApex:
    piece: Optional[int] = None  # piece id, or None for a vertex apex
    vertex: Optional[int] = None


@dataclass(frozen=True)
class WholeTerrain:
    pass


Provenance = Union[InteriorApex, BoundaryApex, WholeTerrain]


@dataclass(frozen=True)
class Candidate:
    """A grounded triangle in the terrain's normal coordinates, with where it came from.

    ``critical`` marks a boundary apex placed at a rational approximation of
    an interior critical point of the area function on a piece.
    """

    triangle: GroundedTriangle
    provenance: Provenance
    critical: bool = False

    @property
    def area(self):
        return self.triangle.area

    @property
    def is_boundary(self) -> bool:
        return not isinstance(self.provenance, InteriorApex)

    def key(self):
        a = self.triangle.apex
        return (self.triangle.area, self.is_boundary, -a.x, -a.y)


def better(a: Optional[Candidate], b: Optional[Candidate]) -> Optional[Candidate]:
    """Larger area wins; then boundary over interior; then the smaller apex."""
    if a is None:
        return b
    if b is None:
        return a
    return b if b.key() > a.key() else a


def make_triangle(t: Terrain, apex, lf, rf, area) -> GroundedTriangle:
    by = t.base_y
    return GroundedTriangle(
        Point(canon(apex[0]), canon(apex[1] + by)),
        Point(canon(lf), by),
        Point(canon(rf), by),
        canon(area),
    )


