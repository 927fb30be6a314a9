"""Interior apices: crossings of L and R prolongations, searched node by node.

At every node of the hereditary segment tree three interactions are
searched (standard x standard, hereditary L x standard R, standard L x
hereditary R), each as an implicit totally monotone matrix handed to SMAWK.
Rows are L segments top-down, columns R segments top-down.

A crossing is charged to the node whose interval [lo, hi) contains its
x-coordinate and where the pair meets in one of the three interactions; the
half-open convention makes the charge unique.  Pairs that only touch at a
shared endpoint never show up in the matrices, so they are collected by a
separate hashing pass and charged at the lowest node whose interval has the
touching x strictly inside.

All geometry is in the terrain frame (base on y = 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .candidates import LH_VS_R, RH_VS_L, STD_STD, TOUCHING, Candidate, InteriorApex, better, make_triangle
from .geom import canon
from .hst import HstNode, HstTree
from .smawk import MatrixOracle, monotonicity_violations, row_maxima
from .spt import Prolongation
from .terrain import GroundedTriangle, Terrain

SIDES = (STD_STD, LH_VS_R, RH_VS_L)

# --------------------------------------------------------------------------
# pair geometry


def pair_area(l: Prolongation, r: Prolongation) -> Fraction:
    """Area of the grounded triangle whose sides carry l and r."""
    A1, B1, C1 = l.A, l.B, l.C
    A2, B2, C2 = r.A, r.B, r.C
    k = A2 * C1 - A1 * C2
    return Fraction(k * k, 2 * (A1 * B2 - A2 * B1) * A1 * -A2)


def pair_apex(l: Prolongation, r: Prolongation) -> Tuple:
    A1, B1, C1 = l.A, l.B, l.C
    A2, B2, C2 = r.A, r.B, r.C
    x = Fraction(C2 * B1 - C1 * B2) / (A1 * B2 - A2 * B1)
    return canon(x), canon((A1 * x + C1) / B1)


def pair_triangle(t: Terrain, l: Prolongation, r: Prolongation) -> GroundedTriangle:
    return make_triangle(t, pair_apex(l, r), Fraction(-l.C) / l.A, Fraction(-r.C) / r.A, pair_area(l, r))


# --------------------------------------------------------------------------
# node interactions


def _at(x):
    f = Fraction(x)
    return f.numerator, f.denominator


def _count_above(rows, cols, xn, xd) -> List[int]:
    """For each row (top-down), the number of columns at or above it at x = xn/xd."""
    cv = [(c.A * xn + c.C * xd, c.B) for c in cols]
    m = len(cols)
    out = []
    j = 0
    for s in rows:
        v, b = s.A * xn + s.C * xd, s.B
        while j < m and cv[j][0] * b >= v * cv[j][1]:
            j += 1
        out.append(j)
    return out


@dataclass
class InteractionContext:
    """One interaction at one node, filtered to rows that cross something.

    Row i crosses exactly the columns in ``blocks[i] = (start, stop)``.
    ``pi_left``/``pi_right`` hold, for std_std, how many columns sit at or
    above each unfiltered row on the left and right walls of the strip; a row
    crosses nothing iff the two ranks agree.
    """

    node: HstNode
    side: str
    lo: object
    hi: object
    rows: List[Prolongation] = field(default_factory=list)
    cols: List[Prolongation] = field(default_factory=list)
    blocks: List[Tuple[int, int]] = field(default_factory=list)
    psi: List[int] = field(default_factory=list)
    pi_left: List[int] = field(default_factory=list)
    pi_right: List[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.rows) and bool(self.cols)

    def crossing_pairs(self):
        for i, (s, e) in enumerate(self.blocks):
            for j in range(s, e):
                yield i, j


def make_context(tree: HstTree, node: HstNode, side: str) -> InteractionContext:
    lo, hi = tree.interval(node)
    ctx = InteractionContext(node, side, lo, hi)
    if side == STD_STD:
        L, R = node.L, node.R
        if not L or not R:
            return ctx
        a = _count_above(L, R, *_at(lo))
        b = _count_above(L, R, *_at(hi))
        ctx.pi_left, ctx.pi_right = a, b
        for s, ai, bi in zip(L, a, b):
            if ai > bi:
                ctx.rows.append(s)
                ctx.blocks.append((bi, ai))
                ctx.psi.append(ai - 1)
        ctx.cols = list(R) if ctx.rows else []
    elif side == RH_VS_L:
        L = node.L
        if not L or not node.Rh:
            return ctx
        hn, hd = _at(hi)
        top = L[0]
        tv, tb = top.A * hn + top.C * hd, top.B
        cols = [r for r in node.Rh if r.x_hi >= hi and (r.A * hn + r.C * hd) * tb < tv * r.B]
        if not cols:
            return ctx
        c = _count_above(L, cols, hn, hd)
        m = len(cols)
        for s, ci in zip(L, c):
            if ci < m:
                ctx.rows.append(s)
                ctx.blocks.append((ci, m))
                ctx.psi.append(ci)
        ctx.cols = cols if ctx.rows else []
    elif side == LH_VS_R:
        R = node.R
        if not R or not node.Lh:
            return ctx
        ln, ld = _at(lo)
        top = R[0]
        tv, tb = top.A * ln + top.C * ld, top.B
        rows = [s for s in node.Lh if s.x_lo <= lo and (s.A * ln + s.C * ld) * tb <= tv * s.B]
        if not rows:
            return ctx
        d = _count_above(rows, R, ln, ld)
        for s, di in zip(rows, d):
            if di > 0:
                ctx.rows.append(s)
                ctx.blocks.append((0, di))
                ctx.psi.append(di - 1)
        ctx.cols = list(R) if ctx.rows else []
    else:
        raise ValueError(f"unknown interaction {side!r}")
    return ctx


def matrix_for(ctx: InteractionContext, memo: bool = True) -> MatrixOracle:
    rows, cols, blocks = ctx.rows, ctx.cols, ctx.blocks

    def entry(i, j):
        s, e = blocks[i]
        if j < s:
            return (1, j)
        if j >= e:
            return (0, -j)
        return (2, pair_area(rows[i], cols[j]))

    return MatrixOracle(len(rows), len(cols), entry, memo=memo)


def _best_in_context(ctx: InteractionContext, t: Terrain, stats=None) -> Optional[Candidate]:
    if not ctx:
        return None
    m = matrix_for(ctx)
    phi = row_maxima(m)
    if stats is not None:
        stats["smawk_evaluations"] = stats.get("smawk_evaluations", 0) + m.evaluations
    best = None
    for i, j in enumerate(phi):
        val = m(i, j)
        if best is not None and val[1] < best[0]:
            continue
        apex = pair_apex(ctx.rows[i], ctx.cols[j])
        cand = (val[1], -apex[0], -apex[1], i, j)
        if best is None or cand > best:
            best = cand
    _, _, _, i, j = best
    tri = pair_triangle(t, ctx.rows[i], ctx.cols[j])
    return Candidate(tri, InteriorApex(ctx.node.id, i, j, ctx.side))


def touching_pairs(tree: HstTree) -> Dict[int, List[Tuple[Prolongation, Prolongation]]]:
    """L x R pairs meeting only at a shared endpoint, grouped by charged node id."""
    if not tree.leaves:
        return {}
    ends: Dict[tuple, List[Prolongation]] = {}
    for s in tree.L:
        ends.setdefault(tuple(s.start), []).append(s)
        ends.setdefault(tuple(s.end), []).append(s)
    pos = {x: k for k, x in enumerate(tree.atomic.coords)}
    out: Dict[int, List] = {}
    for r in tree.R:
        for pt in (tuple(r.start), tuple(r.end)):
            for s in ends.get(pt, ()):
                k = pos[pt[0]]
                if 0 < k < len(tree.atomic.coords) - 1:
                    nid = tree.lca(k - 1, k).id
                else:  # pragma: no cover - a shared endpoint always has segments on both sides
                    nid = tree.leaf_node(min(k, tree.leaves - 1)).id
                out.setdefault(nid, []).append((s, r))
    return out


def charged_pairs(tree: HstTree, touching=None):
    """Every (node id, kind, l, r) charge made by the interior search."""
    if touching is None:
        touching = touching_pairs(tree)
    for node in tree.live_nodes():
        for side in SIDES:
            ctx = make_context(tree, node, side)
            for i, j in ctx.crossing_pairs():
                yield node.id, side, ctx.rows[i], ctx.cols[j]
        for l, r in touching.get(node.id, ()):
            yield node.id, TOUCHING, l, r


def best_at_node(tree: HstTree, node: HstNode, t: Terrain, touching=None, stats=None) -> Optional[Candidate]:
    best = None
    for side in SIDES:
        best = better(best, _best_in_context(make_context(tree, node, side), t, stats))
    if touching is None:
        touching = touching_pairs(tree)
    for l, r in touching.get(node.id, ()):
        c = Candidate(pair_triangle(t, l, r), InteriorApex(node.id, -1, -1, TOUCHING))
        best = better(best, c)
    return best


def best_interior_apex(tree: HstTree, t: Terrain, stats=None) -> Optional[Candidate]:
    if not tree.L or not tree.R or not tree.leaves:
        return None
    touching = touching_pairs(tree)
    best = None
    for node in tree.nodes:
        if node is None:
            continue
        if node.L or node.R or node.id in touching:
            best = better(best, best_at_node(tree, node, t, touching, stats))
    return best




def monotonicity_check(tree: HstTree, max_nodes: Optional[int] = None, max_cells: int = 40000) -> List[tuple]:
    """Verify 2x2 minors of node matrices; returns (node id, kind, i, i2, j, j2) violations.

    Nodes are visited in heap order; matrices with more than ``max_cells``
    entries are skipped, and at most ``max_nodes`` matrices are checked.
    """
    bad = []
    checked = 0
    for node in tree.live_nodes():
        for side in SIDES:
            ctx = make_context(tree, node, side)
            if not ctx or len(ctx.rows) * len(ctx.cols) > max_cells:
                continue
            if max_nodes is not None and checked >= max_nodes:
                return bad
            checked += 1
            for q in monotonicity_violations(matrix_for(ctx, memo=False)):
                bad.append((node.id, side) + tuple(q))
    return bad
