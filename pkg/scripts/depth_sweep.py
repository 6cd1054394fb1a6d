#!/usr/bin/env python3
"""Sweep the perturbed-grid family and report the max arrangement depth.

The top grid row sits on a shallow circular arc, so its circumdisks are
nearly identical and stack on top of each other; the measured depth should
track the grid side (i.e. sqrt of the point count).

Usage: python scripts/depth_sweep.py [--sides 6,8,10,12] [--seed 0]
"""

import argparse
import time

from maxangle.arrangement import build_arrangement, stats
from maxangle.instances import perturbed_grid
from maxangle.triangulation import build_delaunay, delaunay_circles


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sides", default="6,8,10,12")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'side':>5} {'n':>6} {'m':>6} {'d':>4} {'d_bar':>7} "
          f"{'build_s':>8}")
    for side in (int(s) for s in args.sides.split(",")):
        pts = perturbed_grid(side, seed=args.seed)
        t0 = time.perf_counter()
        t = build_delaunay(pts)
        arr = build_arrangement(delaunay_circles(t), snap_points=pts)
        st = stats(arr, t)
        dt = time.perf_counter() - t0
        print(f"{side:>5} {len(pts):>6} {st.m:>6} {st.d:>4} "
              f"{st.d_bar:>7.2f} {dt:>8.2f}")


if __name__ == "__main__":
    main()
