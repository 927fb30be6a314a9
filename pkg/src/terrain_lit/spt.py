"""Shortest-path trees from the base vertices and their forward prolongations.

In a terrain the geodesic from B_l to a vertex v is the lower convex hull of
B_l, the chain vertices left of v, and v itself.  One left-to-right hull
sweep therefore yields the whole tree T_l in linear time: the parent of v is
the stack top after v has popped what it can see past.  T_r is the same
sweep on the x-mirrored terrain.

All internal work uses the terrain's frame (base translated to y = 0).  For
the right side x is also negated, so the two sides share one code path.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .geom import DirSegment, GeneralPositionViolation, Point, Scalar, canon, cross, line_intersection
from .terrain import Terrain

LEFT, RIGHT = "L", "R"


def _side_of(root) -> str:
    if root in (0, LEFT, "left", "B_l"):
        return LEFT
    if root in (1, RIGHT, "right", "B_r"):
        return RIGHT
    raise ValueError(f"root must be B_l (0) or B_r (1), got {root!r}")


# --------------------------------------------------------------------------
# triangulation


@dataclass(frozen=True)
class Triangulation:
    triangles: Tuple[Tuple[int, int, int], ...]  # counterclockwise vertex triples

    @cached_property
    def diagonals(self) -> List[Tuple[int, int]]:
        count: Dict[Tuple[int, int], int] = {}
        for tri in self.triangles:
            for k in range(3):
                e = tuple(sorted((tri[k], tri[(k + 1) % 3])))
                count[e] = count.get(e, 0) + 1
        return sorted(e for e, c in count.items() if c == 2)

    @cached_property
    def adjacency(self) -> Dict[int, List[int]]:
        owner: Dict[Tuple[int, int], List[int]] = {}
        for ti, tri in enumerate(self.triangles):
            for k in range(3):
                owner.setdefault(tuple(sorted((tri[k], tri[(k + 1) % 3]))), []).append(ti)
        adj: Dict[int, List[int]] = {ti: [] for ti in range(len(self.triangles))}
        for ts in owner.values():
            if len(ts) == 2:
                a, b = ts
                adj[a].append(b)
                adj[b].append(a)
        return adj


def triangulate(t: Terrain) -> Triangulation:
    """Stack triangulation of the x-monotone terrain polygon, linear time."""
    v = t.vertices
    order = t.xorder
    tris = []

    def emit(a, b, c):
        if cross(v[a], v[b], v[c]) < 0:
            b, c = c, b
        tris.append((a, b, c))

    stack = [order[0], order[1]]
    for k in range(2, len(order) - 1):
        u = order[k]
        # every interior vertex is on the upper chain, so only the same-chain case arises
        while len(stack) >= 2 and cross(v[stack[-2]], v[stack[-1]], v[u]) < 0:
            top = stack.pop()
            emit(stack[-1], u, top)
        stack.append(u)
    last = order[-1]
    for a, b in zip(stack, stack[1:]):
        emit(a, last, b)
    return Triangulation(tuple(tris))


# --------------------------------------------------------------------------
# ray shooting along the chain


class ChainShooter:
    """First chain vertex on or below a rightward line, over x-sorted points.

    Short walks answer most queries; longer ones fall back to a segment tree
    whose nodes hold lower hulls, giving O(log^2 n) per query.
    """

    WALK = 32

    def __init__(self, pts: Sequence[Tuple[Scalar, Scalar]]):
        self.pts = pts
        self._size = 0
        self._hulls: Optional[List[List[int]]] = None

    def first_below(self, start: int, a, b) -> Optional[int]:
        """Smallest j >= start with pts[j] on or right of the directed line a->b (b.x > a.x)."""
        pts = self.pts
        ax, ay = a
        dx, dy = b[0] - ax, b[1] - ay
        stop = min(len(pts), start + self.WALK)
        for j in range(start, stop):
            x, y = pts[j]
            if dx * (y - ay) - dy * (x - ax) <= 0:
                return j
        if stop >= len(pts):
            return None
        if self._hulls is None:
            self._build()
        return self._search(1, 0, self._size, stop, ax, ay, dx, dy)

    def _build(self):
        pts = self.pts
        n = len(pts)
        size = 1
        while size < n:
            size *= 2
        hulls: List[List[int]] = [[] for _ in range(2 * size)]
        for i in range(n):
            hulls[size + i] = [i]
        for node in range(size - 1, 0, -1):
            h: List[int] = []
            for i in hulls[2 * node] + hulls[2 * node + 1]:
                p = pts[i]
                while len(h) >= 2:
                    o, m = pts[h[-2]], pts[h[-1]]
                    if (m[0] - o[0]) * (p[1] - o[1]) - (m[1] - o[1]) * (p[0] - o[0]) <= 0:
                        h.pop()
                    else:
                        break
                h.append(i)
            hulls[node] = h
        self._size = size
        self._hulls = hulls

    def _min_f(self, h, ax, ay, dx, dy):
        pts = self.pts
        lo, hi = 0, len(h) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            p, q = pts[h[mid]], pts[h[mid + 1]]
            if dx * (q[1] - p[1]) - dy * (q[0] - p[0]) >= 0:
                hi = mid
            else:
                lo = mid + 1
        x, y = pts[h[lo]]
        return dx * (y - ay) - dy * (x - ax)

    def _search(self, node, nlo, nhi, s, ax, ay, dx, dy):
        h = self._hulls[node]
        if nhi <= s or not h:
            return None
        if nlo >= s and self._min_f(h, ax, ay, dx, dy) > 0:
            return None
        if nhi - nlo == 1:
            return nlo
        mid = (nlo + nhi) // 2
        r = self._search(2 * node, nlo, mid, s, ax, ay, dx, dy)
        if r is not None:
            return r
        return self._search(2 * node + 1, mid, nhi, s, ax, ay, dx, dy)


# --------------------------------------------------------------------------
# per-side sweep data


class SideSweep:
    """Vertices of one side in sweep order, mirrored for the right side."""

    def __init__(self, t: Terrain, side: str):
        self.t = t
        self.side = side
        order = t.xorder if side == LEFT else t.xorder[::-1]
        fr = t.frame
        if side == LEFT:
            self.pts = [fr[i] for i in order]
        else:
            self.pts = [(-fr[i][0], fr[i][1]) for i in order]
        self.order = order
        self.pos = {v: k for k, v in enumerate(order)}
        self.xs = [p[0] for p in self.pts]
        self.parent = self._hull_parents()

    def _hull_parents(self) -> List[int]:
        pts = self.pts
        parent = [-1] * len(pts)
        st = [0]
        for k in range(1, len(pts)):
            p = pts[k]
            while len(st) >= 2:
                c = cross(pts[st[-2]], pts[st[-1]], p)
                if c > 0:
                    break
                if c == 0:
                    raise GeneralPositionViolation(
                        f"vertices {self.order[st[-2]]}, {self.order[st[-1]]}, {self.order[k]} are collinear"
                    )
                st.pop()
            parent[k] = st[-1]
            st.append(k)
        return parent

    @cached_property
    def shooter(self) -> ChainShooter:
        return ChainShooter(self.pts)

    def unmirror(self, p) -> Tuple[Scalar, Scalar]:
        return (p[0], p[1]) if self.side == LEFT else (-p[0], p[1])

    def stacks(self):
        """Yield (k, stack) after each vertex k is pushed; the stack is live, do not keep it."""
        pts = self.pts
        st = [0]
        yield 0, st
        for k in range(1, len(pts)):
            p = pts[k]
            while len(st) >= 2 and cross(pts[st[-2]], pts[st[-1]], p) <= 0:
                st.pop()
            st.append(k)
            yield k, st


def sweep(t: Terrain, side: str) -> SideSweep:
    cache = t.__dict__.setdefault("_sweeps", {})
    if side not in cache:
        cache[side] = SideSweep(t, side)
    return cache[side]


# --------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class SPTree:
    root: int  # 0 for B_l, 1 for B_r
    parent: Tuple[int, ...]  # indexed by vertex; -1 at the root

    @property
    def side(self) -> str:
        return LEFT if self.root == 0 else RIGHT

    @property
    def edges(self) -> List[Tuple[int, int]]:
        """Edges p -> q oriented away from the root, sorted by child index."""
        return [(p, q) for q, p in enumerate(self.parent) if p >= 0]

    def path_to_root(self, v: int) -> List[int]:
        out = [v]
        while self.parent[out[-1]] >= 0:
            out.append(self.parent[out[-1]])
        return out


def shortest_path_tree(t: Terrain, root=0) -> SPTree:
    s = sweep(t, _side_of(root))
    parent = [-1] * t.n
    for k, pk in enumerate(s.parent):
        if pk >= 0:
            parent[s.order[k]] = s.order[pk]
    return SPTree(0 if s.side == LEFT else 1, tuple(parent))


# --------------------------------------------------------------------------
# prolongations


class Prolongation:
    """Forward prolongation of a tree edge p -> q, from q to the boundary.

    ``start``/``end`` are frame coordinates (base on y = 0).  The carrier
    line is y = (A x + C) / B with B > 0.
    """

    __slots__ = ("side", "origin_edge", "hit_edge", "start", "end", "A", "B", "C", "x_lo", "x_hi", "base_y", "uid")

    def __init__(self, side, origin_edge, hit_edge, p, q, end, base_y=0):
        self.side = side
        self.origin_edge = origin_edge
        self.hit_edge = hit_edge
        self.start = q
        self.end = end
        dx, dy = q[0] - p[0], q[1] - p[1]
        if dx < 0:
            dx, dy = -dx, -dy
        self.A, self.B = dy, dx
        self.C = p[1] * dx - p[0] * dy
        self.x_lo, self.x_hi = (q[0], end[0]) if q[0] < end[0] else (end[0], q[0])
        self.base_y = base_y
        self.uid = -1

    def __repr__(self):
        return f"Prolongation({self.side}, {self.origin_edge}, {self.start} -> {self.end})"

    @property
    def foot_x(self) -> Scalar:
        return canon(Fraction(-self.C, 1) / self.A)

    @property
    def base_foot(self) -> Point:
        return Point(self.foot_x, self.base_y)

    @property
    def segment(self) -> DirSegment:
        b = self.base_y
        return DirSegment(
            Point(canon(self.start[0]), canon(self.start[1] + b)),
            Point(canon(self.end[0]), canon(self.end[1] + b)),
            self.side,
        )

    @property
    def slope(self) -> Fraction:
        return Fraction(self.A, 1) / self.B

    def y_at(self, x) -> Tuple[int, int]:
        """Frame height at x as an unreduced (numerator, positive denominator) pair."""
        n, d = x.numerator, x.denominator
        return self.A * n + self.C * d, self.B * d


def prolongations_for(s: SideSweep) -> List[Prolongation]:
    pts, parent, order = s.pts, s.parent, s.order
    base_y = s.t.base_y
    out = []
    for k in range(1, len(pts) - 1):
        p, q, nxt = pts[parent[k]], pts[k], pts[k + 1]
        c = cross(p, q, nxt)
        if c < 0:
            continue
        if c == 0:
            raise GeneralPositionViolation(
                f"tree edge {order[parent[k]]}->{order[k]} is collinear with edge to {order[k + 1]}"
            )
        j = s.shooter.first_below(k + 2, p, q)
        if j is None:  # pragma: no cover - the far base vertex always qualifies
            raise GeneralPositionViolation("prolongation escaped the terrain")
        if cross(p, q, pts[j]) == 0:
            raise GeneralPositionViolation(
                f"prolongation of {order[parent[k]]}->{order[k]} passes through vertex {order[j]}"
            )
        hit = line_intersection(p, q, pts[j - 1], pts[j])
        out.append(
            Prolongation(
                s.side,
                (order[parent[k]], order[k]),
                (order[j - 1], order[j]),
                s.unmirror(p),
                s.unmirror(q),
                s.unmirror(hit),
                base_y,
            )
        )
    return out


def forward_prolongations(t: Terrain, tree: SPTree) -> List[Prolongation]:
    """The set L (tree rooted at B_l) or R (rooted at B_r)."""
    return prolongations_for(sweep(t, tree.side))


def boundary_hit(t: Terrain, frm, direction) -> Point:
    """First boundary point hit by the ray from ``frm`` (inside t) along ``direction``."""
    dx, dy = direction
    if dx == 0 and dy == 0:
        raise ValueError("direction must be nonzero")
    x0, y0 = frm[0], frm[1] - t.base_y
    if dx == 0:
        return Point(x0, t.chain_y(x0) if dy > 0 else t.base_y)
    s = sweep(t, LEFT if dx > 0 else RIGHT)
    if dx < 0:
        x0, dx = -x0, -dx
    a, b = (x0, y0), (x0 + dx, y0 + dy)
    k = bisect.bisect_right(s.xs, x0)
    best = None
    j = s.shooter.first_below(k, a, b) if k < len(s.pts) else None
    if j is not None:
        best = line_intersection(a, b, s.pts[j - 1], s.pts[j])
    if dy < 0:
        xb = x0 + Fraction(-y0) * dx / dy
        if best is None or xb < best[0]:
            best = Point(canon(xb), 0)
    if best is None:  # pragma: no cover - guarded by the precondition
        raise ValueError("ray does not start inside the terrain")
    x, y = s.unmirror(best)
    return Point(canon(x), canon(y + t.base_y))
