"""Instance generators: seeded random point sets, the perturbed grid whose
arrangement depth grows like the grid side, and the clipped-circle family
whose constrained state changes grow quadratically."""

from __future__ import annotations

import math
import random

from .geom import Point, general_position_check


def random_instance(n: int, seed: int = 0, span: float = 10.0,
                    gp: str = "basic", max_tries: int = 200) -> list[Point]:
    """Uniform points in a span x span square, rejection-resampled until the
    requested general-position mode passes.  gp: "basic" | "strong" | "none".
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        pts = [Point(rng.uniform(0.0, span), rng.uniform(0.0, span))
               for _ in range(n)]
        if gp == "none":
            return pts
        if not general_position_check(pts, mode=gp):
            return pts
    raise RuntimeError(f"no general-position instance after {max_tries} tries")


def perturbed_grid(side: int, epsilon: float = 1e-3, seed: int = 0) -> list[Point]:
    """side x side unit grid whose top row is dropped onto a shallow
    upward-facing circular arc (maximum sag 0.1), making the top-row
    circumdisks nearly identical so the arrangement depth reaches the order
    of the grid side.  All other points are jittered by at most epsilon."""
    if side < 3:
        raise ValueError("side must be at least 3")
    if not (0.0 < epsilon < 0.4):
        raise ValueError("epsilon must be a small positive jitter")
    rng = random.Random(seed)
    w = (side - 1) / 2.0
    sag = 0.1
    radius = w * w / (2.0 * sag) + sag / 2.0   # arc through the row ends
    cx = w
    cy = (side - 1.0) - sag + radius
    pts: list[Point] = []
    for j in range(side):
        for i in range(side):
            if j == side - 1:
                # the tiny vertical jitter keeps the circumdisks distinct
                # (the flat arc amplifies it) while they stay nearly equal
                x = i + rng.uniform(-epsilon, epsilon)
                y = cy - math.sqrt(radius * radius - (x - cx) ** 2) \
                    + rng.uniform(-epsilon, epsilon) * 1e-3
                pts.append(Point(x, y))
            else:
                pts.append(Point(i + rng.uniform(-epsilon, epsilon),
                                 j + rng.uniform(-epsilon, epsilon)))
    return pts


def clipped_circle_family(count: int, seed: int = 0):
    """count/3 nearly cocircular points on the unit circle plus count/3
    horizontal constraint chords (endpoints outside the circle) slicing the
    disk, so each chord crossing flips the visibility of many triangles.

    Returns a ConstrainedInstance.
    """
    from .constrained import ConstrainedInstance

    if count < 6 or count % 3 != 0:
        raise ValueError("count must be a multiple of 3, at least 6")
    k = count // 3
    rng = random.Random(seed)
    pts: list[Point] = []
    # cocircular ring, jittered angles, avoiding the chord rows
    for i in range(k):
        theta = 2.0 * math.pi * (i + 0.31 + rng.uniform(-0.05, 0.05)) / k
        r = 1.0 + rng.uniform(-1e-4, 1e-4)
        pts.append(Point(r * math.cos(theta), r * math.sin(theta)))
    constraints = []
    for j in range(k):
        y = -0.72 + 1.44 * (j + 0.5) / k
        yl = y + rng.uniform(-1e-3, 1e-3)
        yr = y + rng.uniform(-1e-3, 1e-3)
        a = Point(-1.2 + rng.uniform(-1e-3, 1e-3), yl)
        b = Point(1.2 + rng.uniform(-1e-3, 1e-3), yr)
        constraints.append((len(pts), len(pts) + 1))
        pts.extend([a, b])
    return ConstrainedInstance(tuple(pts), tuple(constraints))
