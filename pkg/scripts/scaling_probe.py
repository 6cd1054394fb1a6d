#!/usr/bin/env python3
"""Measure how the two search phases scale with arrangement size.

For a sweep of instance sizes this prints, per instance: the arrangement
complexity k, the max depth d, the region-search wall time, and (for the
smaller sizes) the total lower-envelope piece count against the total
crossing count sum x_i.  Finishes with least-squares log-log slopes.

Usage: python scripts/scaling_probe.py [--sizes 50,100,200,400] [--seed 0]
"""

import argparse
import math
import time

import numpy as np

from maxangle.arrangement import build_arrangement, stats
from maxangle.boundary import functions_on_circle, lower_envelope
from maxangle.geom import convex_hull
from maxangle.instances import random_instance
from maxangle.region import region_search
from maxangle.triangulation import build_delaunay, delaunay_circles


def build(n, seed):
    pts = random_instance(n, seed=seed, gp="none")
    t = build_delaunay(pts)
    hull = convex_hull(pts)
    arr = build_arrangement(delaunay_circles(t), snap_points=pts,
                            hull_points=[pts[i] for i in hull])
    return pts, t, hull, arr


def envelope_pieces(t, arr):
    cache = {}
    pieces = 0
    for ci in range(len(arr.circles)):
        funcs = functions_on_circle(ci, arr, t, cache, check_deltas=False)
        for side in ("in", "out"):
            fs = [f for f in funcs if f.side == side]
            if fs:
                pieces += len(lower_envelope(fs).pieces)
    return pieces


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="50,100,200,400")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--envelope-max-n", type=int, default=100,
                    help="skip the envelope count above this size")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    kd, region_times = [], []
    piece_rows = []
    print(f"{'n':>5} {'k':>8} {'d':>4} {'sum_x':>8} {'region_s':>9} "
          f"{'pieces':>8}")
    for n in sizes:
        pts, t, hull, arr = build(n, args.seed + n)
        st = stats(arr, t)
        t0 = time.perf_counter()
        region_search(t, arr, hull)
        dt = time.perf_counter() - t0
        kd.append(st.k * st.d)
        region_times.append(dt)
        pieces = ""
        if n <= args.envelope_max_n:
            p = envelope_pieces(t, arr)
            piece_rows.append((p, sum(st.x)))
            pieces = str(p)
        print(f"{n:>5} {st.k:>8} {st.d:>4} {sum(st.x):>8} {dt:>9.2f} "
              f"{pieces:>8}")

    if len(kd) >= 2:
        A = np.vstack([np.log(kd), np.ones(len(kd))]).T
        slope = float(np.linalg.lstsq(A, np.log(region_times),
                                      rcond=None)[0][0])
        print(f"region time vs k*d log-log slope: {slope:.3f}")
    if len(piece_rows) >= 2:
        (p0, x0), (p1, x1) = piece_rows[0], piece_rows[-1]
        print(f"envelope pieces vs sum_x exponent: "
              f"{math.log(p1 / p0) / math.log(x1 / x0):.3f}")


if __name__ == "__main__":
    main()
