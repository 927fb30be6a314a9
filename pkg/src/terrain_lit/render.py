"""SVG drawing of a terrain with its trees, prolongations and a triangle.

Coordinates are converted to floats for display only, and everything is
drawn in normal form (base horizontal).  Output depends only on the inputs,
so equal inputs give byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .spt import LEFT, RIGHT, prolongations_for, shortest_path_tree, sweep
from .terrain import GroundedTriangle, Terrain


@dataclass(frozen=True)
class RenderOptions:
    terrain: bool = True
    base: bool = True
    trees: bool = True
    prolongations: bool = True
    backward: bool = True
    triangle: bool = True
    width: int = 800
    margin: int = 20


_COLORS = {LEFT: "#1f77b4", RIGHT: "#d62728"}


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, t: Terrain, opts: RenderOptions):
        xs = [float(p.x) for p in t.vertices]
        ys = [float(p.y) for p in t.vertices]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, 1e-12)
        self.k = (opts.width - 2 * opts.margin) / span
        self.m = opts.margin
        self.height = int(round((self.y1 - min(ys)) * self.k)) + 2 * opts.margin

    def pt(self, p) -> str:
        x = (float(p[0]) - self.x0) * self.k + self.m
        y = (self.y1 - float(p[1])) * self.k + self.m
        return f"{_fmt(x)},{_fmt(y)}"

    def line(self, a, b, color, dashed=False, width=1) -> str:
        (x1, y1), (x2, y2) = self.pt(a).split(","), self.pt(b).split(",")
        extra = ' stroke-dasharray="4 3"' if dashed else ""
        if width != 1:
            extra += f' stroke-width="{width}"'
        return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}"{extra}/>'


def render_svg(t: Terrain, tri: Optional[GroundedTriangle] = None, path=None, opts: RenderOptions = RenderOptions()) -> str:
    """Return the SVG text; also write it to ``path`` when given.

    ``tri`` is in normal coordinates (as held in a solver candidate).
    """
    c = _Canvas(t, opts)
    v = t.vertices
    by = t.base_y
    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opts.width}" height="{c.height}" '
        f'viewBox="0 0 {opts.width} {c.height}">'
    ]

    def group(name, body):
        out.append(f'<g id="{name}">')
        out.extend(body)
        out.append("</g>")

    if opts.terrain:
        pts = " ".join(c.pt(p) for p in v)
        group("terrain", [f'<polygon points="{pts}" fill="#f2efe6" stroke="#555555"/>'])
    if opts.base:
        group("base", [c.line(v[0], v[1], "#000000", width=2)])
    if t.n > 3 and (opts.trees or opts.prolongations or opts.backward):
        for root, side in ((0, LEFT), (1, RIGHT)):
            color = _COLORS[side]
            if opts.trees:
                tree = shortest_path_tree(t, root)
                group(f"tree_{side}", [c.line(v[a], v[b], color) for a, b in tree.edges])
            pro = prolongations_for(sweep(t, side))
            if opts.prolongations:
                group(f"prolongations_{side}", [
                    c.line((p.start[0], p.start[1] + by), (p.end[0], p.end[1] + by), color) for p in pro
                ])
            if opts.backward:
                group(f"backward_{side}", [
                    c.line(p.base_foot, (p.start[0], p.start[1] + by), color, dashed=True) for p in pro
                ])
    if opts.triangle and tri is not None:
        pts = " ".join(c.pt(p) for p in (tri.left_foot, tri.apex, tri.right_foot))
        group("triangle", [f'<polygon points="{pts}" fill="#2ca02c" fill-opacity="0.35" stroke="#2ca02c"/>'])
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
