"""Compare the fast solver with the brute-force oracle on seeded random terrains."""

import argparse
import time

from terrain_lit.apex import solve_detailed
from terrain_lit.oracle import check_triangle_valid, oracle_solve
from terrain_lit.terrain import PROFILES, format_terrain, generate_random


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=24)
    ap.add_argument("--samples", type=int, default=400, help="boundary samples per edge")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    start = time.perf_counter()
    bad = critical = 0
    span = args.max_n - args.min_n + 1
    for k in range(args.count):
        n = args.min_n + k % span
        t = generate_random(n, args.seed + k, PROFILES[k % len(PROFILES)])
        r = solve_detailed(t)
        o = oracle_solve(t, args.samples)
        critical += r.best.critical
        exact_ok = r.area >= o.exact_best.area if r.best.critical else r.area == o.exact_best.area
        if not (exact_ok and r.area >= o.sampled_best.area and check_triangle_valid(t, r.best.triangle)):
            bad += 1
            print(f"mismatch: solve {r.area} oracle {o.exact_best.area} sampled {float(o.sampled_best.area)}")
            print(format_terrain(t))
    print(f"{args.count} terrains, {bad} mismatches, {critical} critical winners, {time.perf_counter() - start:.1f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
