"""Planar primitives: exact predicates and tolerance-checked constructions.

Predicates (orient, in_disk) are exact: a floating-point filter with a static
error bound decides the easy cases, and anything near the threshold is
re-evaluated in rational arithmetic (floats convert to Fraction exactly).
Constructions (circumcircle, intersections, angles) are plain floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

NEGATIVE = -1
ZERO = 0
POSITIVE = 1

# Angle comparisons near a tie use this absolute slack (radians).
EPS_ANGLE = 1e-9
# Relative tolerance for merging nearly identical points downstream.
EPS_MERGE = 1e-12

# Static filter constants, in the style of adaptive-precision predicates:
# if |det| exceeds the bound times the magnitude sum, the float sign is safe.
_ORIENT_FILTER = 3.3306690738754716e-16
_INDISK_FILTER = 1.1102230246251577e-14


class DegeneracyError(ValueError):
    """Raised when an operation receives geometrically degenerate input."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate: ({self.x}, {self.y})")

    def __iter__(self):
        return iter((self.x, self.y))


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive and finite: {self.radius}")

    def point_at(self, theta: float) -> Point:
        return Point(self.center.x + self.radius * math.cos(theta),
                     self.center.y + self.radius * math.sin(theta))

    def angle_of(self, p: Point) -> float:
        """Angle parameter of p (assumed on or near the circle), in [0, 2pi)."""
        return math.atan2(p.y - self.center.y, p.x - self.center.x) % (2.0 * math.pi)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of twice the signed area of triangle (a, b, c). Exact."""
    detleft = (a.x - c.x) * (b.y - c.y)
    detright = (a.y - c.y) * (b.x - c.x)
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if abs(det) > _ORIENT_FILTER * detsum:
        return POSITIVE if det > 0 else NEGATIVE
    # products may underflow to zero, so a zero det is not trustworthy
    return _orient_exact(a, b, c)


def _orient_exact(a: Point, b: Point, c: Point) -> int:
    ax, ay = Fraction(a.x), Fraction(a.y)
    bx, by = Fraction(b.x), Fraction(b.y)
    cx, cy = Fraction(c.x), Fraction(c.y)
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    if det > 0:
        return POSITIVE
    if det < 0:
        return NEGATIVE
    return ZERO


def in_disk(a: Point, b: Point, c: Point, d: Point) -> int:
    """Positive iff d lies strictly inside the circumcircle of ccw (a, b, c).

    Zero means exactly cocircular. The first three points must be in
    counterclockwise order.
    """
    if orient(a, b, c) != POSITIVE:
        raise ValueError("in_disk requires (a, b, c) in counterclockwise order")
    adx = a.x - d.x
    ady = a.y - d.y
    bdx = b.x - d.x
    bdy = b.y - d.y
    cdx = c.x - d.x
    cdy = c.y - d.y

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady

    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy

    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (alift * (bdxcdy - cdxbdy)
           + blift * (cdxady - adxcdy)
           + clift * (adxbdy - bdxady))
    permanent = (alift * (abs(bdxcdy) + abs(cdxbdy))
                 + blift * (abs(cdxady) + abs(adxcdy))
                 + clift * (abs(adxbdy) + abs(bdxady)))
    if abs(det) > _INDISK_FILTER * permanent:
        return POSITIVE if det > 0 else NEGATIVE
    return _in_disk_exact(a, b, c, d)


def _in_disk_exact(a: Point, b: Point, c: Point, d: Point) -> int:
    dx, dy = Fraction(d.x), Fraction(d.y)
    rows = []
    for p in (a, b, c):
        px = Fraction(p.x) - dx
        py = Fraction(p.y) - dy
        rows.append((px, py, px * px + py * py))
    (ax, ay, al), (bx, by, bl), (cx, cy, cl) = rows
    det = (al * (bx * cy - cx * by)
           - bl * (ax * cy - cx * ay)
           + cl * (ax * by - bx * ay))
    if det > 0:
        return POSITIVE
    if det < 0:
        return NEGATIVE
    return ZERO


def circumcircle(a: Point, b: Point, c: Point) -> Circle:
    """Circle through three non-collinear points."""
    if orient(a, b, c) == ZERO:
        raise DegeneracyError(f"collinear points have no circumcircle: {a}, {b}, {c}")
    bx = b.x - a.x
    by = b.y - a.y
    cx = c.x - a.x
    cy = c.y - a.y
    d = 2.0 * (bx * cy - by * cx)
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = Point(a.x + ux, a.y + uy)
    return Circle(center, math.hypot(ux, uy))


def angle_at(apex: Point, q: Point, r: Point) -> float:
    """Angle at `apex` in triangle (apex, q, r), via the law of cosines.

    Returns a value in (0, pi) for a nondegenerate triangle; collinear
    configurations yield 0.0 or pi.
    """
    pq2 = (q.x - apex.x) ** 2 + (q.y - apex.y) ** 2
    pr2 = (r.x - apex.x) ** 2 + (r.y - apex.y) ** 2
    if pq2 == 0.0 or pr2 == 0.0:
        raise DegeneracyError("angle_at with coincident points")
    qr2 = (r.x - q.x) ** 2 + (r.y - q.y) ** 2
    cos = (pr2 + pq2 - qr2) / (2.0 * math.sqrt(pr2 * pq2))
    return math.acos(min(1.0, max(-1.0, cos)))


def circle_intersections(c1: Circle, c2: Circle) -> list[Point]:
    """Common points of two distinct circles, sorted by angle on c1."""
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d = math.hypot(dx, dy)
    scale = max(c1.radius, c2.radius)
    if d <= EPS_MERGE * scale:
        if abs(c1.radius - c2.radius) <= EPS_MERGE * scale:
            raise DegeneracyError("identical circles intersect everywhere")
        return []  # concentric, distinct radii
    if d > c1.radius + c2.radius or d < abs(c1.radius - c2.radius):
        return []
    # Distance from c1's center to the radical line, along (dx, dy).
    a = (c1.radius ** 2 - c2.radius ** 2 + d * d) / (2.0 * d)
    h2 = c1.radius ** 2 - a * a
    h = math.sqrt(max(0.0, h2))
    mx = c1.center.x + a * dx / d
    my = c1.center.y + a * dy / d
    ox = -dy / d * h
    oy = dx / d * h
    if h == 0.0:
        pts = [Point(mx, my)]
    else:
        pts = [Point(mx + ox, my + oy), Point(mx - ox, my - oy)]
    pts.sort(key=c1.angle_of)
    return pts


@dataclass(frozen=True)
class Violation:
    kind: str              # "collinear" | "cocircular" | "circle-triple"
    indices: tuple[int, ...]

    def __str__(self):
        return f"{self.kind}{self.indices}"


def general_position_check(points: list[Point], mode: str = "basic") -> list[Violation]:
    """Report degeneracies: collinear triples, cocircular quadruples, and in
    `strong` mode, non-input intersection points of two Delaunay circles that
    lie on a third circle."""
    if mode not in ("basic", "strong"):
        raise ValueError(f"unknown mode {mode!r}")
    n = len(points)
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient(points[i], points[j], points[k]) == ZERO:
                    violations.append(Violation("collinear", (i, j, k)))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = points[i], points[j], points[k]
                s = orient(a, b, c)
                if s == ZERO:
                    continue
                if s == NEGATIVE:
                    b, c = c, b
                for l in range(k + 1, n):
                    if in_disk(a, b, c, points[l]) == ZERO:
                        violations.append(Violation("cocircular", (i, j, k, l)))
    if mode == "strong" and not violations and n >= 3:
        violations.extend(_strong_circle_check(points))
    return violations


def _strong_circle_check(points: list[Point]) -> list[Violation]:
    # Needs the Delaunay circles; tolerance-based since the intersection
    # points are floating-point constructions.
    from .triangulation import build_delaunay, delaunay_circles

    t = build_delaunay(points)
    circles = delaunay_circles(t)
    scale = max(max(abs(p.x), abs(p.y)) for p in points) + 1.0
    tol = 1e-9 * scale
    out = []
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            for v in circle_intersections(circles[i], circles[j]):
                if any(math.hypot(v.x - p.x, v.y - p.y) <= tol for p in points):
                    continue
                for l, cl in enumerate(circles):
                    if l in (i, j):
                        continue
                    if abs(math.hypot(v.x - cl.center.x, v.y - cl.center.y)
                           - cl.radius) <= tol:
                        out.append(Violation("circle-triple", (i, j, l)))
    return out


def convex_hull(points: list[Point]) -> list[int]:
    """Indices of hull vertices in counterclockwise order (monotone chain)."""
    order = sorted(range(len(points)), key=lambda i: (points[i].x, points[i].y))
    if len(order) <= 2:
        return order

    def half(idx_iter):
        chain = []
        for i in idx_iter:
            while len(chain) >= 2 and orient(points[chain[-2]], points[chain[-1]],
                                             points[i]) != POSITIVE:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(reversed(order))
    return lower[:-1] + upper[:-1]


def point_in_hull(points: list[Point], hull: list[int], q: Point) -> bool:
    """True iff q is strictly inside the convex hull (ccw vertex indices)."""
    m = len(hull)
    if m < 3:
        return False
    for i in range(m):
        a = points[hull[i]]
        b = points[hull[(i + 1) % m]]
        if orient(a, b, q) != POSITIVE:
            return False
    return True
