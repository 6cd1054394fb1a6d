#!/usr/bin/env python3
"""Measure invalid-set churn along circle boundaries for the clipped-circle
family, doubling the instance size each step.

The family puts count/3 nearly cocircular points on the unit circle and
slices the disk with count/3 horizontal chords, so every chord crossing
changes the visibility of many triangles at once; the total state changes
should grow roughly quadratically in count.

Usage: python scripts/state_change_growth.py [--counts 12,24,48] [--seed 0]
"""

import argparse
import math
import time

from maxangle.constrained import build_constrained_arrangement, state_changes
from maxangle.instances import clipped_circle_family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--counts", default="12,24,48")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    counts = [int(c) for c in args.counts.split(",")]

    prev = None
    print(f"{'count':>6} {'changes':>9} {'ratio':>7} {'slope':>7} "
          f"{'build_s':>8}")
    for count in counts:
        inst = clipped_circle_family(count, seed=args.seed)
        t0 = time.perf_counter()
        _, arr = build_constrained_arrangement(inst)
        dt = time.perf_counter() - t0
        s = state_changes(arr)
        ratio = slope = ""
        if prev is not None:
            r = s / max(prev[1], 1)
            ratio = f"{r:.2f}"
            slope = f"{math.log(r) / math.log(count / prev[0]):.2f}"
        print(f"{count:>6} {s:>9} {ratio:>7} {slope:>7} {dt:>8.2f}")
        prev = (count, s)


if __name__ == "__main__":
    main()
