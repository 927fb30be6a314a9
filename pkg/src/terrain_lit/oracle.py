"""Brute-force reference answers, independent of the fast pipeline.

The largest triangle is grounded and each of its slanted sides either
contains two terrain vertices or ends at an apex on the upper boundary.  The
oracle enumerates those two families directly:

* interior style: every pair of two-vertex lines (rising left side, falling
  right side), checked for containment;
* boundary style: apices at the chain vertices and at every point where a
  two-vertex line leaves the terrain, with the binding tangent vertices
  found by scanning all vertices; plus evenly spaced samples per edge.

Float arithmetic (numpy) only screens candidates; every reported value is
recomputed exactly.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .candidates import BoundaryApex, Candidate, InteriorApex, better
from .geom import Point, canon
from .terrain import GroundedTriangle, Terrain, grounded_triangle_from_lines, segment_inside


@dataclass(frozen=True)
class OracleReport:
    best: Optional[Candidate]
    candidates_examined: int
    method: str  # "two_vertex_lines", "boundary_dense" or "combined"
    exact_best: Optional[Candidate] = None  # best over exactly enumerated apices
    sampled_best: Optional[Candidate] = None  # best evenly spaced boundary sample

    @property
    def area(self):
        return self.best.area if self.best is not None else None


def check_triangle_valid(t: Terrain, tri: GroundedTriangle, original: bool = False) -> bool:
    """Feet on the base, apex above it, both sides inside t, area consistent.

    With ``original`` the triangle is given in the input's coordinates.
    """
    if original:
        tri = t.triangle_to_normal(tri)
    by = t.base_y
    a, lf, rf = tri.apex, tri.left_foot, tri.right_foot
    if lf.y != by or rf.y != by or not (t.x_left <= lf.x <= rf.x <= t.x_right):
        return False
    if a.y <= by:
        return False
    if tri.area != Fraction(rf.x - lf.x) * (a.y - by) / 2:
        return False
    return segment_inside(t, (lf, a)) and segment_inside(t, (a, rf))


# --------------------------------------------------------------------------
# two-vertex lines


@dataclass(frozen=True)
class _Line:
    u: int
    w: int
    A: object  # frame line y = (A x + C) / B, B > 0
    B: object
    C: object
    foot: object
    exit_x: object  # where the line first leaves the terrain, walking up from the foot
    exit_y: object


def _chain(t: Terrain):
    fr = t.frame
    return [fr[i] for i in t.xorder]


def _exit(chain, A, B, C, foot, rising: bool):
    """First point past the foot where the line goes strictly above the chain."""
    pts = chain if rising else [(-x, y) for x, y in reversed(chain)]
    if not rising:
        A, foot = -A, -foot
    prev = None
    for x, y in pts:
        g = Fraction(A * x + C) / B - y
        if x > foot and g > 0:
            px, py = prev
            gp = Fraction(A * px + C) / B - py
            xe = px + (x - px) * (-gp) / (g - gp)
            ye = Fraction(A * xe + C) / B
            return (xe if rising else -xe), ye
        prev = (x, y)
    raise AssertionError("line never leaves the terrain")  # pragma: no cover


def two_vertex_lines(t: Terrain) -> Tuple[List[_Line], List[_Line]]:
    """Lines through two vertices whose foot lies on the base: (rising, falling)."""
    fr = t.frame
    chain = _chain(t)
    n = t.n
    rising, falling = [], []
    for u in range(n):
        for w in range(u + 1, n):
            (x1, y1), (x2, y2) = fr[u], fr[w]
            if x1 == x2 or y1 == y2:
                continue
            if x2 < x1:
                x1, y1, x2, y2 = x2, y2, x1, y1
            A, B = y2 - y1, x2 - x1
            C = y1 * B - x1 * A
            foot = canon(Fraction(-C) / A)
            if not (t.x_left <= foot <= t.x_right):
                continue
            up = A > 0
            ex, ey = _exit(chain, A, B, C, foot, up)
            ln = _Line(u, w, A, B, C, foot, canon(ex), canon(ey))
            (rising if up else falling).append(ln)
    return rising, falling


def _pair_triangle(t: Terrain, l: _Line, r: _Line) -> Optional[GroundedTriangle]:
    fr = t.frame
    by = t.base_y

    def pts(ln):
        return (Point(fr[ln.u][0], fr[ln.u][1] + by), Point(fr[ln.w][0], fr[ln.w][1] + by))

    return grounded_triangle_from_lines(t, pts(l), pts(r))


def oracle_interior(t: Terrain) -> Optional[OracleReport]:
    rising, falling = two_vertex_lines(t)
    if not rising or not falling:
        return None
    f = lambda v: float(v)  # noqa: E731
    A1 = np.array([f(l.A) for l in rising])[:, None]
    B1 = np.array([f(l.B) for l in rising])[:, None]
    C1 = np.array([f(l.C) for l in rising])[:, None]
    E1 = np.array([f(l.exit_x) for l in rising])[:, None]
    A2 = np.array([f(r.A) for r in falling])[None, :]
    B2 = np.array([f(r.B) for r in falling])[None, :]
    C2 = np.array([f(r.C) for r in falling])[None, :]
    E2 = np.array([f(r.exit_x) for r in falling])[None, :]
    den = A1 * B2 - A2 * B1
    with np.errstate(divide="ignore", invalid="ignore"):
        x = (C2 * B1 - C1 * B2) / den
        y = (A1 * x + C1) / B1
        area = 0.5 * y * (-C2 / A2 + C1 / A1)
    scale = float(t.x_right - t.x_left) + max(float(v[1]) for v in t.frame)
    tol = 1e-9 * scale
    ok = (den > 0) & (y > -tol) & (x <= E1 + tol) & (x >= E2 - tol)
    area = np.where(ok, area, -np.inf)
    flat = np.argsort(-area, axis=None, kind="stable")
    examined = len(rising) * len(falling)
    best = None
    top = None
    for k in flat:
        a = area.flat[k]
        if not np.isfinite(a):
            break
        if top is not None and a < top * (1 - 1e-9) - tol:
            break
        i, j = divmod(int(k), len(falling))
        tri = _pair_triangle(t, rising[i], falling[j])
        if tri is None:
            continue
        if top is None:
            top = a
        best = better(best, Candidate(tri, InteriorApex(-1, i, j, "two_vertex_lines")))
    if best is None:
        return None
    return OracleReport(best, examined, "two_vertex_lines", best, None)


# --------------------------------------------------------------------------
# boundary apices


def max_triangle_at(t: Terrain, p) -> Optional[GroundedTriangle]:
    """Largest grounded triangle with apex p on the chain, by scanning every vertex."""
    fr = t.frame
    by = t.base_y
    X, Y = p[0], p[1] - by
    if Y <= 0:
        return None
    sl = sr = None
    for x, y in fr:
        if x < X:
            s = Fraction(Y - y) / (X - x)
            if sl is None or s > sl:
                sl = s
        elif x > X:
            s = Fraction(y - Y) / (x - X)
            if sr is None or s < sr:
                sr = s
    lf = X - Y / sl
    rf = X - Y / sr
    return GroundedTriangle(
        Point(canon(X), canon(p[1])), Point(canon(lf), by), Point(canon(rf), by), canon(Y * (rf - lf) / 2)
    )


def exact_boundary_apices(t: Terrain) -> List[Tuple]:
    """Chain vertices plus every exit point of a two-vertex line, as frame points."""
    fr = t.frame
    pts = {fr[i] for i in range(2, t.n)}
    rising, falling = two_vertex_lines(t)
    for ln in rising + falling:
        pts.add((ln.exit_x, ln.exit_y))
    return sorted(p for p in pts if p[1] > 0)


def _sample_floats(t: Terrain, samples: int):
    fr = t.frame
    chain = _chain(t)
    vx = np.array([float(x) for x, _ in fr])
    vy = np.array([float(y) for _, y in fr])
    s = np.linspace(0.0, 1.0, samples)
    out = []
    for e in range(len(chain) - 1):
        (x0, y0), (x1, y1) = chain[e], chain[e + 1]
        px = float(x0) + s * float(x1 - x0)
        py = float(y0) + s * float(y1 - y0)
        dx = px[:, None] - vx[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = (py[:, None] - vy[None, :]) / dx
            sl = np.where(dx > 0, slope, -np.inf).max(axis=1)
            sr = np.where(dx < 0, slope, np.inf).min(axis=1)
            area = 0.5 * py * ((px - py / sr) - (px - py / sl))
        area = np.where(py > 0, area, -np.inf)
        for k in range(samples):
            out.append((area[k], e, k))
    return out


def oracle_boundary(t: Terrain, samples_per_edge: int = 200) -> OracleReport:
    if samples_per_edge < 2:
        raise ValueError("samples_per_edge must be at least 2")
    by = t.base_y
    exact = None
    apices = exact_boundary_apices(t)
    for p in apices:
        tri = max_triangle_at(t, (p[0], p[1] + by))
        if tri is not None:
            exact = better(exact, Candidate(tri, BoundaryApex()))
    chain = _chain(t)
    scored = _sample_floats(t, samples_per_edge)
    scored.sort(key=lambda e: -e[0])
    sampled = None
    for _, e, k in scored[:3]:
        (x0, y0), (x1, y1) = chain[e], chain[e + 1]
        s = Fraction(k, samples_per_edge - 1)
        p = (canon(x0 + s * (x1 - x0)), canon(y0 + s * (y1 - y0) + by))
        tri = max_triangle_at(t, p)
        if tri is not None:
            sampled = better(sampled, Candidate(tri, BoundaryApex()))
    best = better(exact, sampled)
    return OracleReport(best, len(apices) + len(scored), "boundary_dense", exact, sampled)


def oracle_solve(t: Terrain, samples_per_edge: int = 200) -> OracleReport:
    interior = oracle_interior(t)
    boundary = oracle_boundary(t, samples_per_edge)
    exact = better(boundary.exact_best, interior.best if interior else None)
    best = better(exact, boundary.sampled_best)
    examined = boundary.candidates_examined + (interior.candidates_examined if interior else 0)
    return OracleReport(best, examined, "combined", exact, boundary.sampled_best)


# --------------------------------------------------------------------------
# geodesic distances


def geodesic_distances(t: Terrain, root: int) -> List[float]:
    """Shortest-path lengths inside t from vertex ``root``, via the visibility graph."""
    v = t.vertices
    n = t.n
    visible = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if segment_inside(t, (v[a], v[b])):
                visible[a][b] = visible[b][a] = True
    dist = [math.inf] * n
    dist[root] = 0.0
    heap = [(0.0, root)]
    while heap:
        d, a = heapq.heappop(heap)
        if d > dist[a]:
            continue
        for b in range(n):
            if visible[a][b]:
                nd = d + math.hypot(float(v[a].x - v[b].x), float(v[a].y - v[b].y))
                if nd < dist[b]:
                    dist[b] = nd
                    heapq.heappush(heap, (nd, b))
    return dist
