"""Runtime scaling of the tessellation search on Bolza surfaces.

    python scripts/run_scaling.py --g-max 22 --pairs 100 --out scaling.csv
"""

import argparse
import sys

from geodist.cli import loglog_slope, run_bench, write_bench_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g-min", type=int, default=2)
    ap.add_argument("--g-max", type=int, default=22)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--variant", choices=["strict", "corrected"], default="strict")
    ap.add_argument("--out", default="scaling.csv")
    args = ap.parse_args()

    recs = run_bench(args.g_min, args.g_max, args.pairs, args.seed, variant=args.variant, log=sys.stderr)
    with open(args.out, "w", newline="") as fh:
        write_bench_csv(recs, fh)
    slope = loglog_slope([r.genus for r in recs], [r.mean_runtime_s for r in recs])
    print(f"slope: {slope:.3f}" if slope is not None else "slope: n/a")
    print(f"{'g':>3} {'N':>4} {'t (s)':>10} {'polygons':>10} {'poly/N':>7}")
    for r in recs:
        n = 4 * r.genus
        print(f"{r.genus:>3} {n:>4} {r.mean_runtime_s:>10.3g} {r.polygons_examined:>10.1f} {r.polygons_examined / n:>7.2f}")


if __name__ == "__main__":
    main()
