"""Largest grounded triangle in a terrain: the solver entry point.

The optimum is the better of the best boundary apex and the best crossing
of a left and a right prolongation.  Ties go to the boundary candidate,
then to the smaller apex (x first, then y).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from .boundary import best_boundary_apex
from .candidates import Candidate, WholeTerrain, better, make_triangle
from .hst import HstTree, build_hst
from .interior import best_interior_apex
from .spt import LEFT, RIGHT, prolongations_for, sweep
from .terrain import GroundedTriangle, Terrain


# --------------------------------------------------------------------------
# solve


@dataclass
class SolveReport:
    best: Candidate  # normal coordinates
    triangle: GroundedTriangle  # original coordinates
    case: str
    stats: Dict[str, int] = field(default_factory=dict)
    timings_ms: Dict[str, float] = field(default_factory=dict)
    boundary: Optional[Candidate] = None
    interior: Optional[Candidate] = None
    tree: Optional[HstTree] = None

    @property
    def area(self):
        return self.best.area


def solve_detailed(t: Terrain, keep_tree: bool = False) -> SolveReport:
    timings: Dict[str, float] = {}
    stats: Dict[str, int] = {"n": t.n}
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = round((now - clock) * 1000, 3)
        clock = now

    if t.n == 3:
        fr = t.frame
        apex = fr[2]
        area = Fraction(t.x_right - t.x_left) * apex[1] / 2
        best = Candidate(make_triangle(t, apex, t.x_left, t.x_right, area), WholeTerrain())
        lap("total")
        return SolveReport(best, t.triangle_to_original(best.triangle), "whole_terrain", stats, timings, best)

    L = prolongations_for(sweep(t, LEFT))
    R = prolongations_for(sweep(t, RIGHT))
    stats["L"], stats["R"] = len(L), len(R)
    lap("prolongations")
    boundary = best_boundary_apex(t, L, R, stats)
    lap("boundary")
    interior = None
    tree = None
    if L and R:
        tree = build_hst(L, R)
        stats["nodes"] = tree.node_count()
        stats["sum_list_sizes"] = tree.sum_list_sizes()
        lap("hst")
        interior = best_interior_apex(tree, t, stats)
        lap("interior")
    else:
        stats["nodes"] = 0
        stats["sum_list_sizes"] = 0
    best = better(boundary, interior)
    case = "boundary_apex" if best.is_boundary else "interior_apex"
    return SolveReport(
        best,
        t.triangle_to_original(best.triangle),
        case,
        stats,
        timings,
        boundary,
        interior,
        tree if keep_tree else None,
    )


def solve(t: Terrain) -> GroundedTriangle:
    """Largest-area triangle inside t, in the input's original coordinates."""
    return solve_detailed(t).triangle
