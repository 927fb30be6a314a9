"""Draw a terrain with its trees, prolongations and the largest triangle."""

import argparse

from terrain_lit.apex import solve_detailed
from terrain_lit.render import render_svg
from terrain_lit.terrain import generate_random, parse_terrain

T3 = "5\n0 0\n10 0\n7 6\n5 2\n2 4\n"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", help="terrain file (default: a small built-in example)")
    ap.add_argument("-n", type=int, help="draw a random terrain of this size instead")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--profile", default="uniform")
    ap.add_argument("--out", default="terrain.svg")
    args = ap.parse_args(argv)

    if args.n:
        t = generate_random(args.n, args.seed, args.profile)
    elif args.input:
        with open(args.input, encoding="utf-8") as fh:
            t = parse_terrain(fh.read())
    else:
        t = parse_terrain(T3)
    rep = solve_detailed(t)
    render_svg(t, rep.best.triangle, args.out)
    print(f"{args.out}: area {rep.area} ({rep.case})")


if __name__ == "__main__":
    main()
