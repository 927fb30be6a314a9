"""Command-line entry point.

Exit codes: 0 on success, 1 when the terrain is rejected (syntax, validation
or general position), 2 on usage and I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, TextIO, Tuple

from .apex import solve_detailed
from .bench import BenchConfig, bench, loglog_slope, normalized_list_sizes, to_csv
from .geom import GeometryError
from .hst import CycleDetected, build_hst
from .interior import monotonicity_check
from .oracle import oracle_solve
from .render import RenderOptions, render_svg
from .spt import LEFT, RIGHT, prolongations_for, shortest_path_tree, sweep
from .terrain import (
    PROFILES,
    GenerationFailed,
    GroundedTriangle,
    Terrain,
    TerrainSyntaxError,
    ValidationError,
    format_terrain,
    generate_random,
    parse_terrain,
    validate,
)

SUBCOMMANDS = ("solve", "oracle", "validate", "gen", "bench", "render", "dump")


@dataclass
class RunConfig:
    subcommand: str
    input: Optional[str] = None  # path, or "-" for stdin
    seed: Optional[int] = None
    n: Optional[int] = None
    profile: str = "uniform"
    samples: int = 200
    output: str = "text"  # "json" or "text"
    svg: Optional[str] = None
    full_gp: bool = False
    debug_monotonicity: bool = False
    timings: bool = False
    sizes: Tuple[int, ...] = ()
    reps: int = 5
    csv: Optional[str] = None
    dump: Optional[str] = None  # "spt" or "hst"
    layers: RenderOptions = field(default_factory=RenderOptions)


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# formatting


def rational_str(v) -> str:
    f = Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def approx(v) -> float:
    return float(f"{float(v):.12g}")


def triangle_json(tri: GroundedTriangle) -> dict:
    pts = (tri.left_foot, tri.apex, tri.right_foot)
    return {
        "triangle": [[rational_str(p.x), rational_str(p.y)] for p in pts],
        "triangle_approx": [[approx(p.x), approx(p.y)] for p in pts],
    }


def result_json(tri: GroundedTriangle, case: str, n: int, timings=None) -> dict:
    f = Fraction(tri.area)
    out = {"area": {"num": str(f.numerator), "den": str(f.denominator), "approx": approx(f)}}
    out.update(triangle_json(tri))
    out["case"] = case
    out["n"] = n
    out["timings_ms"] = dict(timings or {})
    return out


def result_text(tri: GroundedTriangle, case: str, n: int) -> str:
    def pt(p):
        return f"({rational_str(p.x)}, {rational_str(p.y)})"

    return (
        f"area {rational_str(tri.area)} ~ {approx(tri.area)}\n"
        f"apex {pt(tri.apex)}\nleft foot {pt(tri.left_foot)}\nright foot {pt(tri.right_foot)}\n"
        f"case {case}\nn {n}\n"
    )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(", ", ": ")) + "\n"


# --------------------------------------------------------------------------
# subcommands


def _read(cfg: RunConfig, stdin: TextIO) -> str:
    if cfg.input is None:
        raise UsageError(f"{cfg.subcommand} needs an input path or '-'")
    if cfg.input == "-":
        return stdin.read()
    try:
        with open(cfg.input, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {cfg.input}: {e.strerror}") from None


def _load(cfg: RunConfig, stdin: TextIO) -> Terrain:
    t = parse_terrain(_read(cfg, stdin))
    if cfg.full_gp:
        problems = validate(t, full_gp=True)
        if problems:
            raise ValidationError(problems)
    return t


def _cmd_solve(cfg, stdin, out, err) -> int:
    t = _load(cfg, stdin)
    rep = solve_detailed(t, keep_tree=cfg.debug_monotonicity)
    status = 0
    if cfg.debug_monotonicity and rep.tree is not None:
        bad = monotonicity_check(rep.tree)
        if bad:
            err.write(f"monotonicity violations: {len(bad)}, first {bad[0]}\n")
            status = 1
    if cfg.svg:
        render_svg(t, rep.best.triangle, cfg.svg, cfg.layers)
    timings = rep.timings_ms if cfg.timings else None
    if cfg.output == "json":
        out.write(dumps(result_json(rep.triangle, rep.case, t.n, timings)))
    else:
        out.write(result_text(rep.triangle, rep.case, t.n))
        if timings:
            out.write("".join(f"time {k} {v} ms\n" for k, v in timings.items()))
    return status


def _cmd_oracle(cfg, stdin, out, err) -> int:
    t = _load(cfg, stdin)
    rep = oracle_solve(t, cfg.samples)
    tri = t.triangle_to_original(rep.best.triangle)
    case = "boundary_apex" if rep.best.is_boundary else "interior_apex"
    if t.n == 3:
        case = "whole_terrain"
    if cfg.svg:
        render_svg(t, rep.best.triangle, cfg.svg, cfg.layers)
    if cfg.output == "json":
        d = result_json(tri, case, t.n)
        d["candidates_examined"] = rep.candidates_examined
        out.write(dumps(d))
    else:
        out.write(result_text(tri, case, t.n))
        out.write(f"candidates {rep.candidates_examined}\n")
    return 0


def _cmd_validate(cfg, stdin, out, err) -> int:
    t = parse_terrain(_read(cfg, stdin))
    problems = validate(t, full_gp=cfg.full_gp)
    if problems:
        raise ValidationError(problems)
    out.write(f"ok {t.n} vertices\n")
    return 0


def _cmd_gen(cfg, stdin, out, err) -> int:
    if cfg.seed is None or cfg.n is None:
        raise UsageError("gen needs -n and --seed")
    out.write(format_terrain(generate_random(cfg.n, cfg.seed, cfg.profile)))
    return 0


def _cmd_bench(cfg, stdin, out, err) -> int:
    if cfg.seed is None:
        raise UsageError("bench needs --seed")
    sizes = cfg.sizes or BenchConfig().sizes
    rows = bench(BenchConfig(tuple(sizes), cfg.reps, cfg.seed, cfg.profile))
    text = to_csv(rows)
    if cfg.csv:
        with open(cfg.csv, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(text)
    if len(rows) >= 3:
        top = rows[-3:]
        slope = loglog_slope([r.n for r in top], [r.time_ms for r in top])
        norm = normalized_list_sizes(rows)
        err.write(f"log-log slope (top three sizes): {slope:.3f}\n")
        err.write(f"list sizes / (n log2 n): min {min(norm):.4f} max {max(norm):.4f}\n")
    return 0


def _cmd_render(cfg, stdin, out, err) -> int:
    t = _load(cfg, stdin)
    tri = solve_detailed(t).best.triangle if cfg.layers.triangle else None
    text = render_svg(t, tri, cfg.svg, cfg.layers)
    if not cfg.svg:
        out.write(text)
    return 0


def _pt(p) -> List[str]:
    return [rational_str(p[0]), rational_str(p[1])]


def dump_spt(t: Terrain) -> dict:
    out = {"n": t.n, "coordinates": "normal", "trees": {}, "prolongations": {}}
    for root, side in ((0, LEFT), (1, RIGHT)):
        tree = shortest_path_tree(t, root)
        out["trees"][side] = [list(e) for e in tree.edges]
        pro = prolongations_for(sweep(t, side)) if t.n > 3 else []
        out["prolongations"][side] = [
            {
                "origin_edge": list(p.origin_edge),
                "start": _pt(t.from_frame(p.start)),
                "end": _pt(t.from_frame(p.end)),
                "base_foot": _pt(p.base_foot),
            }
            for p in pro
        ]
    return out


def dump_hst(t: Terrain) -> dict:
    L = prolongations_for(sweep(t, LEFT)) if t.n > 3 else []
    R = prolongations_for(sweep(t, RIGHT)) if t.n > 3 else []
    tree = build_hst(L, R)
    nodes = [
        {"id": v.id, "leaves": [v.lo, v.hi], "L": len(v.L), "R": len(v.R), "Lh": len(v.Lh), "Rh": len(v.Rh)}
        for v in tree.live_nodes()
    ]
    return {
        "n": t.n,
        "leaves": tree.leaves,
        "sum_list_sizes": tree.sum_list_sizes() if tree.leaves else 0,
        "nodes": nodes,
    }


def _cmd_dump(cfg, stdin, out, err) -> int:
    if cfg.dump not in ("spt", "hst"):
        raise UsageError("dump needs --spt or --hst")
    t = _load(cfg, stdin)
    out.write(dumps(dump_spt(t) if cfg.dump == "spt" else dump_hst(t)))
    return 0


_HANDLERS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "validate": _cmd_validate,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
    "render": _cmd_render,
    "dump": _cmd_dump,
}


def run(cfg: RunConfig, stdin: TextIO = sys.stdin, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    if cfg.subcommand not in _HANDLERS:
        stderr.write(f"unknown subcommand {cfg.subcommand!r}\n")
        return 2
    try:
        return _HANDLERS[cfg.subcommand](cfg, stdin, stdout, stderr)
    except UsageError as e:
        stderr.write(f"error: {e}\n")
        return 2
    except ValidationError as e:
        for v in e.violations:
            stderr.write(f"{v}\n")
        return 1
    except (TerrainSyntaxError, GeometryError, CycleDetected, GenerationFailed) as e:
        stderr.write(f"{type(e).__name__}: {e}\n")
        return 1
    except OSError as e:
        stderr.write(f"error: {e}\n")
        return 2


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="terrain-lit", description="Largest triangle inscribed in a terrain.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def solving(sp):
        sp.add_argument("input", help="terrain file, or - for stdin")
        sp.add_argument("--json", dest="output", action="store_const", const="json", default="text")
        sp.add_argument("--text", dest="output", action="store_const", const="text")
        sp.add_argument("--svg", help="also write an SVG drawing here")
        sp.add_argument("--full-gp", action="store_true", help="reject any three collinear vertices")

    sp = sub.add_parser("solve", help="largest triangle, fast algorithm")
    solving(sp)
    sp.add_argument("--timings", action="store_true", help="include per-phase timings (output no longer reproducible)")
    sp.add_argument("--debug-monotonicity", action="store_true", help="check 2x2 minors of every node matrix")

    sp = sub.add_parser("oracle", help="largest triangle, brute force")
    solving(sp)
    sp.add_argument("--samples", type=int, default=200, help="boundary samples per edge")

    sp = sub.add_parser("validate", help="check a terrain file")
    sp.add_argument("input")
    sp.add_argument("--full-gp", action="store_true")

    sp = sub.add_parser("gen", help="random terrain")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--profile", choices=PROFILES, default="uniform")

    sp = sub.add_parser("bench", help="timing CSV over sizes")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--sizes", type=int, nargs="+")
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--profile", choices=PROFILES, default="spiky")
    sp.add_argument("--csv", help="also write the CSV here")

    sp = sub.add_parser("render", help="SVG drawing")
    sp.add_argument("input")
    sp.add_argument("--svg", help="output path (default stdout)")
    sp.add_argument("--full-gp", action="store_true")
    for layer in ("terrain", "base", "trees", "prolongations", "backward", "triangle"):
        sp.add_argument(f"--no-{layer}", action="store_true", help=f"hide the {layer} layer")

    sp = sub.add_parser("dump", help="debug JSON for trees or the segment tree")
    sp.add_argument("input")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--spt", dest="dump", action="store_const", const="spt")
    g.add_argument("--hst", dest="dump", action="store_const", const="hst")
    sp.add_argument("--full-gp", action="store_true")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    get = lambda k, d=None: getattr(ns, k, d)  # noqa: E731
    layers = RenderOptions(
        **{k: not get(f"no_{k}", False) for k in ("terrain", "base", "trees", "prolongations", "backward", "triangle")}
    )
    return RunConfig(
        subcommand=ns.subcommand,
        input=get("input"),
        seed=get("seed"),
        n=get("n"),
        profile=get("profile") or "uniform",
        samples=get("samples", 200),
        output=get("output") or "text",
        svg=get("svg"),
        full_gp=get("full_gp", False),
        debug_monotonicity=get("debug_monotonicity", False),
        timings=get("timings", False),
        sizes=tuple(get("sizes") or ()),
        reps=get("reps", 5),
        csv=get("csv"),
        dump=get("dump"),
        layers=layers,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
