#!/usr/bin/env python3
"""Generate a random instance, place the optimal extra point, and write an
SVG showing the triangulation, the Delaunay circles, and the chosen point.

Usage: python scripts/demo.py [--n 12] [--seed 0] [--out demo.svg]
"""

import argparse
import math

from maxangle.arrangement import build_arrangement
from maxangle.geom import convex_hull
from maxangle.instances import random_instance
from maxangle.pipeline import optimize
from maxangle.region import HoleStructureError, hole_for
from maxangle.svgout import render_svg
from maxangle.triangulation import build_delaunay, delaunay_circles


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="demo.svg")
    args = ap.parse_args()

    pts = random_instance(args.n, seed=args.seed)
    result = optimize(pts, check_gp=False)
    print(f"best point: ({result.point.x:.6f}, {result.point.y:.6f})")
    print(f"min angle after insertion: {math.degrees(result.value):.3f} deg "
          f"(baseline {math.degrees(result.baseline):.3f} deg)")
    print(f"found by: {result.provenance}")

    t = build_delaunay(pts)
    circles = delaunay_circles(t)
    hole = None
    try:
        hull = convex_hull(pts)
        arr = build_arrangement(circles, snap_points=pts,
                                hull_points=[pts[i] for i in hull])
        face = arr.faces[arr.locate(result.point)]
        if face.invalid:
            hole = list(hole_for(t, face.invalid).boundary)
    except HoleStructureError:
        hole = None
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(render_svg(pts, t, circles, None, result.point, hole))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
