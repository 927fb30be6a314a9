"""Boundary apices: the largest grounded triangle with its apex on the upper chain.

For an apex p on the chain, the left side is tangent to the lower hull of
the vertices left of p (B_l included) and the right side mirrors that.  The
tangent vertices only change where p crosses the far end of a prolongation,
so each chain edge is cut at those points into pieces with fixed tangents.
On a piece the area is a rational function of the position: a cubic over a
quadratic.  Piece endpoints and chain vertices are evaluated exactly; a
piece is searched for interior critical points only if a cheap upper bound
says it could beat the best value found so far.

The hot path works on a scaled copy of the frame with integer coordinates
and homogeneous points (x, y, w), w > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .candidates import BoundaryApex, Candidate, better, make_triangle
from .geom import canon
from .poly import local_maxima_unit, pderiv, pmul, psub, _trim
from .spt import LEFT, RIGHT, prolongations_for, sweep
from .terrain import Terrain


@dataclass(frozen=True)
class BoundaryPiece:
    """Part of the chain edge ``edge`` (left, right vertex) between parameters t0 and t1.

    ``start``/``end`` are frame points; every apex on the piece has its
    largest grounded triangle supported by the vertices w_left and w_right.
    """

    id: int
    edge: Tuple[int, int]
    t0: object
    t1: object
    start: Tuple
    end: Tuple
    w_left: int
    w_right: int


# --------------------------------------------------------------------------
# integer frame


def _int_frame(t: Terrain):
    cache = t.__dict__.setdefault("_int_frame", {})
    if "v" not in cache:
        fr = t.frame
        scale = 1
        for x, y in fr:
            for c in (x, y):
                if isinstance(c, Fraction):
                    scale = scale * c.denominator // math.gcd(scale, c.denominator)
        cache["scale"] = scale
        cache["v"] = [(int(x * scale), int(y * scale)) for x, y in fr]
    return cache["scale"], cache["v"]


def _hom(x, y, scale):
    X, Y = Fraction(x) * scale, Fraction(y) * scale
    w = X.denominator * Y.denominator // math.gcd(X.denominator, Y.denominator)
    return (X.numerator * (w // X.denominator), Y.numerator * (w // Y.denominator), w)


def _tangent(pts, st, m) -> int:
    """Stack entry of the lower hull st maximizing slope(w, m); m is homogeneous and right of all."""
    mx, my, mw = m
    lo, hi = 0, len(st) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        ax, ay = pts[st[mid - 1]]
        bx, by = pts[st[mid]]
        if (bx - ax) * (my - ay * mw) - (by - ay) * (mx - ax * mw) > 0:
            lo = mid
        else:
            hi = mid - 1
    return st[lo]


def _edge_foot(p, q):
    """Base crossing of the line through integer points p, q as (num, den), den > 0."""
    (ux, uy), (vx, vy) = p, q
    num, den = ux * (vy - uy) - uy * (vx - ux), vy - uy
    return (num, den) if den > 0 else (-num, -den)


def _raw_pieces(t: Terrain, L, R):
    """[(edge index, P0, P1, w_left, w_right)] with homogeneous scaled endpoints."""
    sl, sr = sweep(t, LEFT), sweep(t, RIGHT)
    scale, iv = _int_frame(t)
    n, order = t.n, t.xorder
    pos = sl.pos
    cuts: List[dict] = [{} for _ in range(n - 1)]
    for s in list(L) + list(R):
        a, b = s.hit_edge
        x, y = s.end
        cuts[min(pos[a], pos[b])][x] = (x, y)
    raw = []
    by_edge: List[List[int]] = [[] for _ in range(n - 1)]
    for e in range(n - 1):
        ux, uy = iv[order[e]]
        vx, vy = iv[order[e + 1]]
        pts = [(ux, uy, 1)]
        c = cuts[e]
        for x in sorted(c):
            pts.append(_hom(*c[x], scale))
        pts.append((vx, vy, 1))
        for a, b in zip(pts, pts[1:]):
            by_edge[e].append(len(raw))
            raw.append([e, a, b, 0, 0])
    lpts = [iv[v] for v in sl.order]
    rpts = [(-iv[v][0], iv[v][1]) for v in sr.order]
    for k, st in sl.stacks():
        if k < n - 1:
            for idx in by_edge[k]:
                _, a, b, _, _ = raw[idx]
                m = (a[0] * b[2] + b[0] * a[2], a[1] * b[2] + b[1] * a[2], 2 * a[2] * b[2])
                raw[idx][3] = sl.order[_tangent(lpts, st, m)]
    for k, st in sr.stacks():
        if k < n - 1:
            for idx in by_edge[n - 2 - k]:
                _, a, b, _, _ = raw[idx]
                m = (-(a[0] * b[2] + b[0] * a[2]), a[1] * b[2] + b[1] * a[2], 2 * a[2] * b[2])
                raw[idx][4] = sr.order[_tangent(rpts, st, m)]
    return raw


def _to_piece(t: Terrain, idx: int, rec) -> BoundaryPiece:
    scale, _ = _int_frame(t)
    e, a, b, wl, wr = rec
    order, fr = t.xorder, t.frame
    u, v = order[e], order[e + 1]
    start = (canon(Fraction(a[0], a[2] * scale)), canon(Fraction(a[1], a[2] * scale)))
    end = (canon(Fraction(b[0], b[2] * scale)), canon(Fraction(b[1], b[2] * scale)))
    width = fr[v][0] - fr[u][0]
    return BoundaryPiece(
        idx,
        (u, v),
        canon(Fraction(start[0] - fr[u][0]) / width),
        canon(Fraction(end[0] - fr[u][0]) / width),
        start,
        end,
        wl,
        wr,
    )


def boundary_pieces(t: Terrain, L=None, R=None, tree_l=None, tree_r=None) -> List[BoundaryPiece]:
    """Split the chain at vertices and prolongation hits; attach tangent vertices.

    The trees are implied by the terrain and accepted only for symmetry with
    the rest of the pipeline.
    """
    if L is None:
        L = prolongations_for(sweep(t, LEFT))
    if R is None:
        R = prolongations_for(sweep(t, RIGHT))
    return [_to_piece(t, k, rec) for k, rec in enumerate(_raw_pieces(t, L, R))]


# --------------------------------------------------------------------------
# exact evaluation


def _eval_int(iv, p, wl, wr, fixed_l, fixed_r):
    """Feet and area at homogeneous apex p, all as (num, den) pairs with den > 0."""
    X, Y, W = p
    if Y == 0:  # the feet converge to the apex itself unless pinned
        return fixed_l or (X, W), fixed_r or (X, W), (0, 1)
    if fixed_l is not None:
        ln, ld = fixed_l
    else:
        a, b = iv[wl]
        ln, ld = a * Y - b * X, Y - b * W
    if fixed_r is not None:
        rn, rd = fixed_r
    else:
        c, d = iv[wr]
        rn, rd = c * Y - d * X, Y - d * W
    return (ln, ld), (rn, rd), (Y * (rn * ld - ln * rd), 2 * W * rd * ld)


def _foot(w, X, Y):
    a, b = w
    return Fraction(a * Y - b * X) / (Y - b)


class PieceFunction:
    """Feet and area along one piece as exact functions of s in [0, 1]."""

    def __init__(self, t: Terrain, piece: BoundaryPiece):
        fr = t.frame
        self.piece = piece
        u, v = piece.edge
        self.p0, self.p1 = piece.start, piece.end
        self.wl, self.wr = fr[piece.w_left], fr[piece.w_right]
        # a tangent at an endpoint of the carrier edge pins the foot to the edge's line
        ef = None
        if piece.w_left == u or piece.w_right == v:
            ef = fr[u][0] - Fraction(fr[u][1]) * (fr[v][0] - fr[u][0]) / (fr[v][1] - fr[u][1])
        self.fixed_l = ef if piece.w_left == u else None
        self.fixed_r = ef if piece.w_right == v else None

    def at(self, s):
        (x0, y0), (x1, y1) = self.p0, self.p1
        return x0 + s * (x1 - x0), y0 + s * (y1 - y0)

    def evaluate(self, s):
        """(apex, left foot x, right foot x, area) at parameter s."""
        X, Y = self.at(s)
        if Y == 0:  # an apex on the base spans nothing
            return (X, Y), X, X, 0
        lf = self.fixed_l if self.fixed_l is not None else _foot(self.wl, X, Y)
        rf = self.fixed_r if self.fixed_r is not None else _foot(self.wr, X, Y)
        return (X, Y), lf, rf, Fraction(Y) * (rf - lf) / 2

    def derivative_numerator(self):
        """Polynomial with the sign of dA/ds on the piece."""
        (x0, y0), (x1, y1) = self.p0, self.p1
        X, Y = [x0, x1 - x0], [y0, y1 - y0]

        def foot(w, fixed):
            if fixed is not None:
                return [fixed], [1]
            a, b = w
            return psub([a * c for c in Y], [b * c for c in X]), psub(Y, [b])

        nl, dl = foot(self.wl, self.fixed_l)
        nr, dr = foot(self.wr, self.fixed_r)
        F = pmul(_trim(Y), psub(pmul(nr, dl), pmul(nl, dr)))
        G = pmul(dl, dr)
        return psub(pmul(pderiv(F), G), pmul(F, pderiv(G)))


def _candidate(t, apex, lf, rf, area, piece=None, vertex=None, critical=False) -> Candidate:
    return Candidate(make_triangle(t, apex, lf, rf, area), BoundaryApex(piece, vertex), critical)


def critical_candidates(t: Terrain, piece: BoundaryPiece) -> List[Candidate]:
    """Apices at (rational brackets of) interior local maxima of the area on the piece."""
    f = PieceFunction(t, piece)
    out = []
    for a, b in local_maxima_unit(f.derivative_numerator()):
        for s in sorted({a, b}):
            apex, lf, rf, area = f.evaluate(s)
            if area > 0:
                out.append(_candidate(t, apex, lf, rf, area, piece.id, critical=a != b))
    return out


def best_apex_on_piece(t: Terrain, piece: BoundaryPiece) -> Optional[Candidate]:
    f = PieceFunction(t, piece)
    best = None
    for s in (0, 1):
        apex, lf, rf, area = f.evaluate(s)
        if area > 0:
            best = better(best, _candidate(t, apex, lf, rf, area, piece.id))
    for c in critical_candidates(t, piece):
        best = better(best, c)
    return best


def vertex_apex_candidates(t: Terrain) -> List[Candidate]:
    """Largest grounded triangle with apex at each chain vertex."""
    sl, sr = sweep(t, LEFT), sweep(t, RIGHT)
    fr = t.frame
    out = []
    for u in range(2, t.n):
        wl = fr[sl.order[sl.parent[sl.pos[u]]]]
        wr = fr[sr.order[sr.parent[sr.pos[u]]]]
        X, Y = fr[u]
        lf, rf = _foot(wl, X, Y), _foot(wr, X, Y)
        out.append(_candidate(t, fr[u], lf, rf, Fraction(Y) * (rf - lf) / 2, vertex=u))
    return out


class _Best:
    """Running maximum over integer-encoded candidates, with the apex tie-break."""

    __slots__ = ("area", "apex", "feet", "piece", "vertex")

    def __init__(self):
        self.area = None

    def offer(self, area, apex, feet, piece=None, vertex=None):
        if self.area is not None:
            an, ad = area
            bn, bd = self.area
            d = an * bd - bn * ad
            if d < 0:
                return
            if d == 0:
                (x1, y1, w1), (x2, y2, w2) = apex, self.apex
                if (x1 * w2, y1 * w2) >= (x2 * w1, y2 * w1):
                    return
        self.area, self.apex, self.feet, self.piece, self.vertex = area, apex, feet, piece, vertex

    def value(self) -> float:
        return self.area[0] / self.area[1]

    def candidate(self, t: Terrain, scale) -> Candidate:
        X, Y, W = self.apex
        (ln, ld), (rn, rd) = self.feet
        apex = (Fraction(X, W * scale), Fraction(Y, W * scale))
        area = Fraction(self.area[0], self.area[1] * scale * scale)
        return _candidate(t, apex, Fraction(ln, ld * scale), Fraction(rn, rd * scale), area, self.piece, self.vertex)


def best_boundary_apex(t: Terrain, L=None, R=None, stats=None) -> Optional[Candidate]:
    if L is None:
        L = prolongations_for(sweep(t, LEFT))
    if R is None:
        R = prolongations_for(sweep(t, RIGHT))
    sl, sr = sweep(t, LEFT), sweep(t, RIGHT)
    scale, iv = _int_frame(t)
    best = _Best()
    for u in range(2, t.n):
        wl = sl.order[sl.parent[sl.pos[u]]]
        wr = sr.order[sr.parent[sr.pos[u]]]
        x, y = iv[u]
        lf, rf, area = _eval_int(iv, (x, y, 1), wl, wr, None, None)
        best.offer(area, (x, y, 1), (lf, rf), vertex=u)
    raw = _raw_pieces(t, L, R)
    order = t.xorder
    bounds = []
    for idx, (e, a, b, wl, wr) in enumerate(raw):
        u, v = order[e], order[e + 1]
        ef = _edge_foot(iv[u], iv[v]) if (wl == u or wr == v) else None
        fl = ef if wl == u else None
        fr_ = ef if wr == v else None
        ea, eb = _eval_int(iv, a, wl, wr, fl, fr_), _eval_int(iv, b, wl, wr, fl, fr_)
        feet = []
        for p, ev in ((a, ea), (b, eb)):
            lf, rf, area = ev
            feet.append((lf[0] / lf[1], rf[0] / rf[1]))
            if area[0] > 0:
                best.offer(area, p, (lf, rf), piece=idx)
        ymax = max(a[1] / a[2], b[1] / b[2])
        bound = ymax * (max(f[1] for f in feet) - min(f[0] for f in feet)) / 2
        bounds.append((bound, idx))
    bounds.sort(key=lambda e: (-e[0], e[1]))
    result = best.candidate(t, scale) if best.area is not None else None
    searched = 0
    for bound, idx in bounds:
        if result is not None and bound * (1 + 1e-9) < float(result.area) * scale * scale:
            break
        searched += 1
        for c in critical_candidates(t, _to_piece(t, idx, raw[idx])):
            result = better(result, c)
    if stats is not None:
        stats["pieces"] = len(raw)
        stats["pieces_searched"] = searched
    return result
