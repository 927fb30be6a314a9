"""Terrains: parsing, validation, containment and a seeded generator.

A terrain is stored in horizontal-base normal form.  Vertex 0 is the left
base vertex, vertex 1 the right one, and vertices 2..n-1 follow the upper
chain from right to left, so the listing is counterclockwise.
"""

from __future__ import annotations

import bisect
import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .geom import (
    AffineShear,
    DirSegment,
    Point,
    Scalar,
    canon,
    cross,
    line_intersection,
    orient,
    scalar,
    shear_to_horizontal,
)


class TerrainSyntaxError(ValueError):
    """Malformed terrain text."""


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: Tuple[int, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        idx = ",".join(map(str, self.indices))
        s = f"{self.kind}({idx})" if self.indices else self.kind
        return f"{s}: {self.detail}" if self.detail else s


class ValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__(str(self.violations[0]) if self.violations else "invalid terrain")


class GenerationFailed(RuntimeError):
    pass


class VertexClass(enum.Enum):
    CONVEX = "Convex"
    REFLEX = "Reflex"
    BASE = "Base"


@dataclass(frozen=True)
class GroundedTriangle:
    """Triangle with its lower edge on the base; area is exact."""

    apex: Point
    left_foot: Point
    right_foot: Point
    area: Scalar

    @property
    def vertices(self) -> Tuple[Point, Point, Point]:
        return (self.apex, self.left_foot, self.right_foot)


@dataclass(frozen=True)
class Terrain:
    vertices: Tuple[Point, ...]
    shear: AffineShear

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def base_y(self) -> Scalar:
        return self.vertices[0].y

    @property
    def x_left(self) -> Scalar:
        return self.vertices[0].x

    @property
    def x_right(self) -> Scalar:
        return self.vertices[1].x

    @cached_property
    def xorder(self) -> Tuple[int, ...]:
        """Vertex indices by increasing x: B_l, the chain left to right, B_r."""
        return (0,) + tuple(range(self.n - 1, 1, -1)) + (1,)

    @cached_property
    def frame(self) -> List[Tuple[Scalar, Scalar]]:
        """Vertex coordinates translated so the base lies on y = 0."""
        b = self.base_y
        return [(v.x, canon(v.y - b)) for v in self.vertices]

    @cached_property
    def _sorted_x(self) -> List[Scalar]:
        return [self.vertices[i].x for i in self.xorder]

    def to_original(self, p) -> Point:
        return self.shear.inverse(p)

    def to_normal(self, p) -> Point:
        return self.shear.forward(p)

    def from_frame(self, p) -> Point:
        return Point(canon(p[0]), canon(p[1] + self.base_y))

    def triangle_to_original(self, tri: GroundedTriangle) -> GroundedTriangle:
        return GroundedTriangle(
            self.to_original(tri.apex),
            self.to_original(tri.left_foot),
            self.to_original(tri.right_foot),
            tri.area,
        )

    def triangle_to_normal(self, tri: GroundedTriangle) -> GroundedTriangle:
        return GroundedTriangle(
            self.to_normal(tri.apex),
            self.to_normal(tri.left_foot),
            self.to_normal(tri.right_foot),
            tri.area,
        )

    def original_vertices(self) -> List[Point]:
        return [self.to_original(v) for v in self.vertices]

    def chain_y(self, x: Scalar) -> Optional[Scalar]:
        """Height of the upper boundary above x, or None outside the base span."""
        xs = self._sorted_x
        if x < xs[0] or x > xs[-1]:
            return None
        k = bisect.bisect_left(xs, x)
        a = self.vertices[self.xorder[k]]
        if a.x == x:
            return a.y
        b = self.vertices[self.xorder[k - 1]]
        return canon(b.y + Fraction(a.y - b.y) * (x - b.x) / (a.x - b.x))

    def chain_indices_between(self, lo: Scalar, hi: Scalar) -> List[int]:
        """Vertex indices with lo < x < hi, by increasing x."""
        xs = self._sorted_x
        i = bisect.bisect_right(xs, lo)
        j = bisect.bisect_left(xs, hi)
        return [self.xorder[k] for k in range(i, j)]

    def contains(self, p) -> bool:
        x, y = p
        top = self.chain_y(x)
        return top is not None and self.base_y <= y <= top

    @classmethod
    def from_listing(cls, points: Iterable) -> "Terrain":
        """Build from a counterclockwise listing in any rotation (not validated)."""
        pts = [Point(scalar(x), scalar(y)) for x, y in points]
        n = len(pts)
        if n < 3:
            raise ValidationError([Violation("TooFewVertices", (), f"n = {n}")])
        xmin = min(p.x for p in pts)
        xmax = max(p.x for p in pts)
        start = min((i for i in range(n) if pts[i].x == xmin), key=lambda i: pts[i].y)
        if pts[(start + 1) % n].x != xmax:
            area2 = sum(cross((0, 0), pts[i], pts[(i + 1) % n]) for i in range(n))
            if area2 < 0:
                raise ValidationError([Violation("Clockwise", (), "vertices must be listed counterclockwise")])
            raise ValidationError([Violation("NotTerrain", (), "lower boundary is not a single segment")])
        pts = pts[start:] + pts[:start]
        sheared, shear = shear_to_horizontal(pts)
        return cls(tuple(sheared), shear)


def parse_terrain(text) -> Terrain:
    """Parse terrain text (bytes or str) and return a validated terrain."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TerrainSyntaxError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise TerrainSyntaxError(f"first line must be the vertex count, got {lines[0]!r}") from None
    if n < 3:
        raise TerrainSyntaxError(f"need at least 3 vertices, got {n}")
    if len(lines) - 1 != n:
        raise TerrainSyntaxError(f"expected {n} vertex lines, found {len(lines) - 1}")
    pts = []
    for k, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise TerrainSyntaxError(f"line {k}: expected 'x y', got {ln!r}")
        try:
            pts.append((scalar(parts[0]), scalar(parts[1])))
        except (ValueError, ZeroDivisionError):
            raise TerrainSyntaxError(f"line {k}: not a decimal number pair: {ln!r}") from None
    t = Terrain.from_listing(pts)
    problems = validate(t)
    if problems:
        raise ValidationError(problems)
    return t


def format_terrain(t: Terrain, original: bool = True) -> str:
    pts = t.original_vertices() if original else list(t.vertices)
    return f"{len(pts)}\n" + "".join(f"{p.x} {p.y}\n" for p in pts)


def validate(t: Terrain, full_gp: bool = False) -> List[Violation]:
    out: List[Violation] = []
    v = t.vertices
    n = len(v)
    if n < 3:
        return [Violation("TooFewVertices", (), f"n = {n}")]
    if v[0].y != v[1].y:
        out.append(Violation("BaseNotHorizontal", (0, 1)))
    if v[0].x >= v[1].x:
        out.append(Violation("BaseOrientation", (0, 1), "x(B_l) must be < x(B_r)"))
    # upper chain: 1 -> 2 -> ... -> n-1 -> 0 with strictly decreasing x
    walk = list(range(1, n)) + [0]
    for a, b in zip(walk, walk[1:]):
        if v[b].x == v[a].x:
            out.append(Violation("VerticalEdge", (a, b)))
        elif v[b].x > v[a].x:
            out.append(Violation("NotXMonotone", (a, b)))
    for i in range(2, n):
        if v[i].y <= v[0].y:
            out.append(Violation("BelowBase", (i,), f"y = {v[i].y}"))
    for i in range(n):
        a, b = v[i - 1], v[(i + 1) % n]
        if orient(a, v[i], b) == 0:
            out.append(Violation("CollinearEdges", ((i - 1) % n, i, (i + 1) % n)))
    if not out:
        area2 = sum(cross((0, 0), v[i], v[(i + 1) % n]) for i in range(n))
        if area2 <= 0:
            out.append(Violation("Clockwise"))
    if full_gp:
        triple = find_collinear_triple(v)
        if triple is not None:
            out.append(Violation("CollinearTriple", triple))
    return out


def find_collinear_triple(pts: Sequence) -> Optional[Tuple[int, int, int]]:
    """Lexicographically first (i, j, k) of three collinear points, or None.

    Quadratic expected time via direction hashing.
    """
    best = None
    n = len(pts)
    for i in range(n):
        seen = {}
        xi, yi = pts[i]
        for j in range(i + 1, n):
            dx, dy = pts[j][0] - xi, pts[j][1] - yi
            if isinstance(dx, int) and isinstance(dy, int):
                g = math.gcd(dx, dy)
                if dx < 0 or (dx == 0 and dy < 0):
                    g = -g
                f = (dx // g, dy // g)
            else:
                f = Fraction(dy, 1) / dx if dx != 0 else None
                f = (f.denominator, f.numerator) if f is not None else (0, 1)
            if f in seen:
                cand = (i, seen[f], j)
                if best is None or cand < best:
                    best = cand
            else:
                seen[f] = j
        if best is not None and best[0] == i:
            return best
    return best


def classify_vertex(t: Terrain, i: int) -> VertexClass:
    if not 0 <= i < t.n:
        raise IndexError(i)
    if i < 2:
        return VertexClass.BASE
    v = t.vertices
    s = orient(v[i - 1], v[i], v[(i + 1) % t.n])
    return VertexClass.CONVEX if s > 0 else VertexClass.REFLEX


def _as_pair(s) -> Tuple[Point, Point]:
    if isinstance(s, DirSegment):
        return s.src, s.dst
    a, b = s
    return Point(*a), Point(*b)


def segment_inside(t: Terrain, s) -> bool:
    """True iff the closed segment lies in the closed terrain region."""
    p, q = _as_pair(s)
    if not (t.contains(p) and t.contains(q)):
        return False
    if p.x == q.x:
        return True
    if p.x > q.x:
        p, q = q, p
    slope = Fraction(q.y - p.y) / (q.x - p.x)
    for i in t.chain_indices_between(p.x, q.x):
        w = t.vertices[i]
        if p.y + slope * (w.x - p.x) > w.y:
            return False
    return True


def grounded_triangle_from_lines(t: Terrain, left_line, right_line) -> Optional[GroundedTriangle]:
    """Grounded triangle whose sides lie on the two lines, if it fits in t.

    ``left_line`` must rise to the right and ``right_line`` fall to the right;
    otherwise None is returned, as for any infeasible pair.
    """
    (a1, a2), (b1, b2) = _as_pair(left_line), _as_pair(right_line)
    if a1.x == a2.x or b1.x == b2.x:
        return None
    if Fraction(a2.y - a1.y) / (a2.x - a1.x) <= 0 or Fraction(b2.y - b1.y) / (b2.x - b1.x) >= 0:
        return None
    apex = line_intersection(a1, a2, b1, b2)
    base = (Point(t.x_left, t.base_y), Point(t.x_right, t.base_y))
    if apex is None or apex.y <= t.base_y:
        return None
    lf = line_intersection(a1, a2, *base)
    rf = line_intersection(b1, b2, *base)
    if not (t.x_left <= lf.x <= rf.x <= t.x_right):
        return None
    if not (segment_inside(t, (lf, apex)) and segment_inside(t, (apex, rf))):
        return None
    area = canon(Fraction(rf.x - lf.x) * (apex.y - t.base_y) / 2)
    return GroundedTriangle(apex, lf, rf, area)


PROFILES = ("uniform", "spiky", "plateau")


def _heights(n_chain: int, profile: str, rng: random.Random, big: bool) -> List[int]:
    top = 10**9 if big else 10**6
    if profile == "uniform":
        return [rng.randint(1, top) for _ in range(n_chain)]
    if profile == "spiky":
        low, high = top // 5, (3 * top) // 5
        return [rng.randint(high, top) if k % 2 == 0 else rng.randint(1, low) for k in range(n_chain)]
    if profile == "plateau":
        return [
            rng.randint(1, top // 2) if rng.random() < 0.15 else rng.randint((9 * top) // 10, top)
            for _ in range(n_chain)
        ]
    raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")


FULL_GP_LIMIT = 2000


def generate_random(n: int, seed: int, profile: str = "uniform", max_tries: int = 200) -> Terrain:
    """Seeded random terrain with integer coordinates and base (0,0)-(4n,0).

    Up to FULL_GP_LIMIT vertices every vertex triple is checked for
    collinearity; beyond that only consecutive triples are, and heights are
    drawn from a much larger range so accidental collinearity is negligible.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    rng = random.Random(f"{profile}:{n}:{seed}")
    width = 4 * n
    big = n > FULL_GP_LIMIT
    for _ in range(max_tries):
        xs = sorted(rng.sample(range(1, width), n - 2), reverse=True)
        ys = _heights(n - 2, profile, rng, big)
        verts = (Point(0, 0), Point(width, 0)) + tuple(Point(x, y) for x, y in zip(xs, ys))
        t = Terrain(verts, AffineShear(0, 0))
        if validate(t, full_gp=not big):
            continue
        return t
    raise GenerationFailed(f"no valid terrain after {max_tries} tries (n={n}, seed={seed}, {profile})")
