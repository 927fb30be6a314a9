"""Hereditary segment tree over the prolongations L and R.

Leaves are the atomic intervals between consecutive distinct endpoint
x-coordinates.  The tree is a perfect binary tree in heap layout (node 1 is
the root, children 2k and 2k+1); leaves past the last atomic interval are
padding and never hold anything.

A segment is *standard* at node v when its x-projection contains I_v but not
I_parent(v) (the usual canonical decomposition, with open-interval
semantics at shared endpoints).  It is *hereditary* at every proper
ancestor of one of its standard nodes, once per ancestor.
"""

from __future__ import annotations

import bisect
import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geom import DirSegment, Scalar


def _fast_key(x):
    # float order never contradicts exact order, so compare floats first
    return float(x), x


class CycleDetected(RuntimeError):
    """The above/below constraints are cyclic, so the input segments intersect."""


@dataclass(frozen=True)
class AtomicIntervals:
    coords: Tuple[Scalar, ...]  # sorted distinct endpoint x-coordinates

    @classmethod
    def from_segments(cls, segments) -> "AtomicIntervals":
        xs = set()
        for s in segments:
            xs.add(s.x_lo)
            xs.add(s.x_hi)
        return cls(tuple(sorted(xs, key=_fast_key)))

    def __len__(self) -> int:
        return max(0, len(self.coords) - 1)

    @property
    def intervals(self) -> List[Tuple[Scalar, Scalar]]:
        c = self.coords
        return [(c[k], c[k + 1]) for k in range(len(c) - 1)]

    def leaf_of(self, x) -> Optional[int]:
        """Leaf k with c_k <= x < c_(k+1), or None outside [c_0, c_last)."""
        k = bisect.bisect_right(self.coords, x) - 1
        if k < 0 or k >= len(self):
            return None
        return k


class HstNode:
    __slots__ = ("id", "lo", "hi", "L", "R", "Lh", "Rh")

    def __init__(self, nid: int, lo: int, hi: int):
        self.id = nid
        self.lo = lo  # first leaf index
        self.hi = hi  # one past the last leaf index (clipped to real leaves)
        self.L: list = []
        self.R: list = []
        self.Lh: list = []
        self.Rh: list = []

    def __repr__(self):
        return f"HstNode({self.id}, leaves [{self.lo},{self.hi}), |L|={len(self.L)} |R|={len(self.R)} |Lh|={len(self.Lh)} |Rh|={len(self.Rh)})"

    @property
    def list_size(self) -> int:
        return len(self.L) + len(self.R) + len(self.Lh) + len(self.Rh)


class HstTree:
    """Heap-ordered node array plus per-segment membership."""

    def __init__(self, L: Sequence, R: Sequence, atomic: AtomicIntervals):
        self.L = list(L)
        self.R = list(R)
        self.atomic = atomic
        leaves = len(atomic)
        size = 1
        while size < leaves:
            size *= 2
        self.size = size
        self.leaves = leaves
        self.nodes: List[Optional[HstNode]] = [None] * (2 * size)
        if leaves == 0:
            return
        for nid in range(2 * size - 1, 0, -1):
            if nid >= size:
                lo = nid - size
                if lo < leaves:
                    self.nodes[nid] = HstNode(nid, lo, lo + 1)
            else:
                a, b = self.nodes[2 * nid], self.nodes[2 * nid + 1]
                if a is not None:
                    self.nodes[nid] = HstNode(nid, a.lo, b.hi if b is not None else a.hi)
        # membership: per side, per segment index, the standard and hereditary node ids
        self.std: Dict[str, List[List[int]]] = {}
        self.her: Dict[str, List[List[int]]] = {}

    @property
    def root(self) -> Optional[HstNode]:
        return self.nodes[1] if self.leaves else None

    def live_nodes(self) -> List[HstNode]:
        return [v for v in self.nodes if v is not None]

    def interval(self, v: HstNode) -> Tuple[Scalar, Scalar]:
        c = self.atomic.coords
        return c[v.lo], c[v.hi]

    def children(self, v: HstNode) -> List[HstNode]:
        if v.id >= self.size:
            return []
        return [c for c in (self.nodes[2 * v.id], self.nodes[2 * v.id + 1]) if c is not None]

    def parent(self, v: HstNode) -> Optional[HstNode]:
        return self.nodes[v.id // 2] if v.id > 1 else None

    def leaf_node(self, k: int) -> HstNode:
        return self.nodes[self.size + k]

    def lca(self, a: int, b: int) -> HstNode:
        """Lowest common ancestor of leaves a and b."""
        x, y = self.size + a, self.size + b
        while x != y:
            x //= 2
            y //= 2
        return self.nodes[x]

    def sum_list_sizes(self) -> int:
        return sum(v.list_size for v in self.nodes if v is not None)

    def node_count(self) -> int:
        return sum(1 for v in self.nodes if v is not None)

    def _assign(self, side: str, segs: Sequence) -> None:
        pos = {x: k for k, x in enumerate(self.atomic.coords)}
        size = self.size
        std_all, her_all = [], []
        mark = [-1] * (2 * size)
        nodes = self.nodes
        last = len(self.atomic.coords) - 1
        for uid, s in enumerate(segs):
            a, b = pos[s.x_lo], pos[s.x_hi]
            # reaching the last coordinate counts as covering the padding too, so the
            # decomposition matches the clipped node intervals
            a, b = a + size, (b if b < last else size) + size
            std = []
            while a < b:
                if a & 1:
                    std.append(a)
                    a += 1
                if b & 1:
                    b -= 1
                    std.append(b)
                a >>= 1
                b >>= 1
            std = [w for w in std if nodes[w] is not None]
            her = []
            for w in std:
                u = w >> 1
                while u and mark[u] != uid:
                    mark[u] = uid
                    her.append(u)
                    u >>= 1
            std_all.append(std)
            her_all.append(her)
        self.std[side] = std_all
        self.her[side] = her_all

    def fill(self, order_L: Sequence[int], order_R: Sequence[int]) -> None:
        """(Re)populate all four lists, appending segments in the given orders."""
        nodes = self.nodes
        for v in nodes:
            if v is not None:
                v.L, v.R, v.Lh, v.Rh = [], [], [], []
        for side, segs, order, sname, hname in (
            ("L", self.L, order_L, "L", "Lh"),
            ("R", self.R, order_R, "R", "Rh"),
        ):
            std, her = self.std[side], self.her[side]
            for uid in order:
                s = segs[uid]
                for nid in std[uid]:
                    getattr(nodes[nid], sname).append(s)
                for nid in her[uid]:
                    getattr(nodes[nid], hname).append(s)


def build_hst(L: Sequence, R: Sequence, sort: bool = True) -> HstTree:
    """Build the tree; with ``sort`` the lists come out in global above/below order."""
    tree = HstTree(L, R, AtomicIntervals.from_segments(list(L) + list(R)))
    if tree.leaves == 0:
        return tree
    tree._assign("L", tree.L)
    tree._assign("R", tree.R)
    if sort:
        distribute_sorted(tree, compute_total_order(tree.L), compute_total_order(tree.R))
    else:
        tree.fill(range(len(tree.L)), range(len(tree.R)))
    return tree


# --------------------------------------------------------------------------
# global above/below order


@dataclass(frozen=True)
class SegmentOrder:
    perm: Tuple[int, ...]  # segment indices, topmost first

    @property
    def rank(self) -> List[int]:
        r = [0] * len(self.perm)
        for k, i in enumerate(self.perm):
            r[i] = k
        return r


def _line_form(s):
    """(x_lo, x_hi, A, B, C) with the carrier y = (A x + C) / B, B > 0."""
    if isinstance(s, DirSegment):
        (x0, y0), (x1, y1) = s.src, s.dst
        if x0 == x1:
            raise ValueError("vertical segments have no above/below order")
        if x1 < x0:
            x0, y0, x1, y1 = x1, y1, x0, y0
        dx, dy = x1 - x0, y1 - y0
        return x0, x1, dy, dx, y0 * dx - x0 * dy
    return s.x_lo, s.x_hi, s.A, s.B, s.C


def compute_total_order(segments: Sequence) -> SegmentOrder:
    """Topological order of the above relation among x-overlapping segments.

    A sweep records one constraint per pair of segments that become
    vertically adjacent; a topological sort then extends them.  Ties are
    broken by left endpoint, so x-disjoint segments come out left to right.
    """
    forms = [_line_form(s) for s in segments]
    m = len(forms)
    events = []
    for i, (xl, xh, _, _, _) in enumerate(forms):
        events.append((xl, 0, i))
        events.append((xh, 1, i))
    events.sort(key=lambda e: (float(e[0]), e[0], e[1], e[2]))
    succ: List[List[int]] = [[] for _ in range(m)]
    status: List[int] = []  # top to bottom

    def edge(a, b):
        succ[a].append(b)

    # at equal x, insertions come first so segments meeting only there are compared
    for x, kind, i in events:
        if kind == 1:
            pos = status.index(i)
            if 0 < pos < len(status) - 1:
                edge(status[pos - 1], status[pos + 1])
            del status[pos]
            continue
        xn, xd = Fraction(x).numerator, Fraction(x).denominator
        _, _, A, B, C = forms[i]
        vi = A * xn + C * xd
        lo, hi = 0, len(status)
        while lo < hi:
            mid = (lo + hi) // 2
            _, _, Am, Bm, Cm = forms[status[mid]]
            d = (Am * xn + Cm * xd) * B - vi * Bm
            if d > 0 or (d == 0 and Am * B > A * Bm):
                lo = mid + 1  # status[mid] is above the new segment
            else:
                hi = mid
        if lo > 0:
            edge(status[lo - 1], i)
        if lo < len(status):
            edge(i, status[lo])
        status.insert(lo, i)

    return SegmentOrder(tuple(topological_order(succ, [f[0] for f in forms])))


def topological_order(succ: Sequence[Sequence[int]], keys: Sequence) -> List[int]:
    """Kahn's algorithm, taking the smallest (key, index) among ready items."""
    m = len(succ)
    indeg = [0] * m
    for out_edges in succ:
        for j in out_edges:
            indeg[j] += 1
    heap = [(float(keys[i]), keys[i], i) for i in range(m) if indeg[i] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, _, i = heapq.heappop(heap)
        out.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (float(keys[j]), keys[j], j))
    if len(out) != m:
        raise CycleDetected(f"{m - len(out)} segments are on an above/below cycle")
    return out


def distribute_sorted(tree: HstTree, order_L: SegmentOrder, order_R: SegmentOrder) -> HstTree:
    """Fill every list in the global order; standard lists end up top-down."""
    if tree.leaves:
        tree.fill(order_L.perm, order_R.perm)
    return tree
