import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from terrain_lit.geom import DirSegment, point, segment_intersection
from terrain_lit.hst import AtomicIntervals, CycleDetected, build_hst, compute_total_order, topological_order
from terrain_lit.spt import LEFT, RIGHT, prolongations_for, sweep

from conftest import terrains


def _tree(t, sort=True):
    return build_hst(prolongations_for(sweep(t, LEFT)), prolongations_for(sweep(t, RIGHT)), sort)


def _y(s, x):
    return Fraction(s.A * x + s.C) / s.B


def seg(x0, y0, x1, y1):
    return DirSegment(point(x0, y0), point(x1, y1))


def test_atomic_intervals_half_open():
    a = AtomicIntervals.from_segments([seg(0, 0, 4, 1), seg(2, 5, 7, 5)])
    assert a.coords == (0, 2, 4, 7) and len(a) == 3
    assert a.intervals == [(0, 2), (2, 4), (4, 7)]
    assert [a.leaf_of(x) for x in (-1, 0, 1, 2, 6, 7)] == [None, 0, 0, 1, 2, None]


def test_t3_tree(t3):
    tree = _tree(t3)
    assert tree.atomic.coords == (Fraction(5, 3), 5, Fraction(25, 3))
    (l,), (r,) = tree.L, tree.R
    assert tree.nodes[2].R == [r] and tree.nodes[3].L == [l]
    assert tree.root.Lh == [l] and tree.root.Rh == [r]
    assert tree.sum_list_sizes() == 4


def test_single_l_no_r():
    s = seg(0, 0, 4, 2)
    tree = build_hst([s], [])
    assert tree.leaves == 1
    assert all(not (v.R or v.Rh) for v in tree.live_nodes())
    assert tree.root.L == [s]


def test_eleven_atomic_intervals():
    # twelve distinct endpoint coordinates 0..11, on a 16-leaf padded tree
    L = [seg(0, 10, 11, 12), seg(1, 5, 3, 6), seg(2, 1, 9, 2), seg(4, 3, 6, 4), seg(5, 7, 8, 8), seg(7, 0, 10, 0.5)]
    tree = build_hst(L, [])
    assert tree.leaves == 11 and tree.size == 16
    ids = {i: [v.id for v in tree.live_nodes() if s in v.L] for i, s in enumerate(L)}
    assert ids[0] == [1]  # spans every atomic interval
    assert ids[1] == [17, 18]  # leaves 1 and 2
    assert ids[3] == [10]  # leaves 4, 5
    assert ids[5] == [12, 23]  # leaves 7..9: node for 8-9, leaf 7
    # the root's hereditary list holds everything below it, once
    assert sorted(map(id, tree.root.Lh)) == sorted(map(id, L[1:]))


def _check_membership(tree):
    coords = tree.atomic.coords
    for side, segs in (("L", tree.L), ("R", tree.R)):
        std_of = {}
        for v in tree.live_nodes():
            lo, hi = coords[v.lo], coords[v.hi]
            par = tree.parent(v)
            for s in segs:
                covers = s.x_lo <= lo and hi <= s.x_hi
                covers_par = par is not None and s.x_lo <= coords[par.lo] and coords[par.hi] <= s.x_hi
                assert (s in getattr(v, side)) == (covers and not covers_par)
                if covers and not covers_par:
                    std_of.setdefault(id(s), []).append(v.id)
        for v in tree.live_nodes():
            her = getattr(v, side + "h")
            assert len({id(s) for s in her}) == len(her)
            want = set()
            for s in segs:
                for w in std_of.get(id(s), ()):
                    u = w // 2
                    while u:
                        if u == v.id:
                            want.add(id(s))
                        u //= 2
            assert {id(s) for s in her} == want


@given(terrains(4, 60))
def test_membership_brute_force(t):
    tree = _tree(t)
    if tree.leaves:
        _check_membership(tree)


@given(terrains(4, 80))
def test_standard_lists_sorted_top_down(t):
    tree = _tree(t)
    coords = tree.atomic.coords
    for v in tree.live_nodes():
        mid = (Fraction(coords[v.lo]) + coords[v.hi]) / 2
        for lst in (v.L, v.R):
            ys = [_y(s, mid) for s in lst]
            assert ys == sorted(ys, reverse=True)


@given(terrains(4, 80))
def test_base_foot_order_within_nodes(t):
    tree = _tree(t)
    for v in tree.live_nodes():
        feet = [s.foot_x for s in v.L]
        assert all(a > b for a, b in zip(feet, feet[1:]))
        feet = [s.foot_x for s in v.R]
        assert all(a < b for a, b in zip(feet, feet[1:]))


@given(terrains(4, 80))
def test_no_hereditary_endpoint_below_standard_left(t):
    tree = _tree(t)
    coords = tree.atomic.coords
    for v in tree.live_nodes():
        if not v.L:
            continue
        lo, hi = coords[v.lo], coords[v.hi]
        for r in v.Rh:
            for x, y in (r.start, r.end):
                if lo < x < hi:
                    assert all(y >= _y(s, x) for s in v.L)
        for s in v.Lh:
            for x, y in (s.start, s.end):
                if lo < x < hi and v.R:
                    assert all(y >= _y(r, x) for r in v.R)


def test_order_small_cases():
    upper, lower = seg(0, 5, 10, 5), seg(2, 1, 8, 2)
    assert compute_total_order([lower, upper]).perm == (1, 0)
    left, right = seg(0, 1, 2, 1), seg(5, 9, 7, 9)
    assert compute_total_order([right, left]).perm == (1, 0)
    assert compute_total_order([left, right]).rank == [0, 1]


def test_topological_order_ties_and_cycles():
    assert topological_order([[1], [], []], [5, 0, 1]) == [2, 0, 1]
    assert topological_order([[], [], []], [3, 1, 2]) == [1, 2, 0]
    with pytest.raises(CycleDetected):
        topological_order([[1], [2], [0]], [0, 1, 2])


def _random_disjoint(rng, count):
    out = []
    while len(out) < count:
        x0 = rng.randint(0, 90)
        x1 = x0 + rng.randint(1, 20)
        y0 = rng.randint(0, 100)
        s = seg(x0, y0, x1, y0 + rng.randint(-10, 10))
        if all(segment_intersection(s, o) is None for o in out):
            out.append(s)
    return out


@given(st.integers(0, 10**6))
def test_order_agrees_with_pairwise_above(seed):
    segs = _random_disjoint(random.Random(seed), 50)
    rank = compute_total_order(segs).rank
    for (i, a), (j, b) in itertools.combinations(enumerate(segs), 2):
        lo, hi = max(a.x_span[0], b.x_span[0]), min(a.x_span[1], b.x_span[1])
        if lo > hi:
            continue
        x = Fraction(lo + hi, 2)
        if a.y_at(x) > b.y_at(x):
            assert rank[i] < rank[j]
        else:
            assert rank[i] > rank[j]


def test_unsorted_build_keeps_membership(t3):
    tree = _tree(t3, sort=False)
    _check_membership(tree)
