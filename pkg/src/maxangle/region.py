"""Per-cell interior optimization.

For a face of the circle arrangement, the triangles it invalidates form a
star-shaped hole; connecting the new point to the hole boundary gives the
fan whose smallest angle we maximize over the hole's kernel.  Superlevel
sets of that objective are convex, so a cutting-plane scheme on a shrinking
localization polygon converges to the optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geom import EPS_ANGLE, Point, angle_at, orient, point_in_hull, POSITIVE
from .triangulation import Triangulation


class HoleStructureError(RuntimeError):
    """Invalid-set union is not a simple star-shaped polygon."""


class DegenerateKernelError(ValueError):
    pass


@dataclass(frozen=True)
class Hole:
    boundary: tuple[Point, ...]          # ccw
    boundary_indices: tuple[int, ...]    # triangulation vertex ids
    triangles: frozenset[int]
    kernel: tuple[Point, ...]            # convex, ccw


@dataclass(frozen=True)
class CellSolution:
    face: int
    point: Point
    value: float            # smallest fan angle at `point`
    overall_value: float    # min(value, smallest surviving angle)
    inside_cell: bool
    iterations: int


def hole_for(t: Triangulation, invalid_set) -> Hole:
    invalid = frozenset(invalid_set)
    if not invalid:
        raise ValueError("hole_for needs a nonempty invalid set")
    directed = set()
    for ti in invalid:
        tri = t.triangles[ti]
        for e in range(3):
            directed.add((tri[e], tri[(e + 1) % 3]))
    boundary_edges = {e for e in directed if (e[1], e[0]) not in directed}
    succ = {}
    for (a, b) in boundary_edges:
        if a in succ:
            raise HoleStructureError("hole boundary is pinched")
        succ[a] = b
    start = next(iter(succ))
    cycle = [start]
    cur = succ[start]
    while cur != start:
        cycle.append(cur)
        if len(cycle) > len(succ):
            raise HoleStructureError("hole boundary does not close")
        cur = succ[cur]
    if len(cycle) != len(succ):
        raise HoleStructureError("hole boundary has multiple cycles")
    pts = tuple(t.vertices[i] for i in cycle)
    kernel = _kernel_polygon(pts)
    return Hole(pts, tuple(cycle), invalid, kernel)


def _kernel_polygon(boundary: tuple[Point, ...]) -> tuple[Point, ...]:
    """Intersection of the inner half-planes of the ccw boundary edges,
    clipped starting from the hole's bounding box."""
    xs = [p.x for p in boundary]
    ys = [p.y for p in boundary]
    pad = 1.0
    poly = [Point(min(xs) - pad, min(ys) - pad),
            Point(max(xs) + pad, min(ys) - pad),
            Point(max(xs) + pad, max(ys) + pad),
            Point(min(xs) - pad, max(ys) + pad)]
    m = len(boundary)
    for i in range(m):
        a = boundary[i]
        b = boundary[(i + 1) % m]
        poly = clip_halfplane(poly, b.x - a.x, b.y - a.y, a)
        if not poly:
            return ()
    return tuple(poly)


def clip_halfplane(poly, dx, dy, a: Point):
    """Keep the part of convex `poly` left of the directed line through `a`
    with direction (dx, dy)."""
    def side(p):
        return dx * (p.y - a.y) - dy * (p.x - a.x)

    out = []
    n = len(poly)
    for i in range(n):
        p = poly[i]
        q = poly[(i + 1) % n]
        sp = side(p)
        sq = side(q)
        if sp >= 0:
            out.append(p)
        if (sp > 0 > sq) or (sp < 0 < sq):
            u = sp / (sp - sq)
            out.append(Point(p.x + u * (q.x - p.x), p.y + u * (q.y - p.y)))
    return out


def _polygon_area(poly) -> float:
    s = 0.0
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return 0.5 * s


def _polygon_centroid(poly) -> Point:
    a = 0.0
    cx = cy = 0.0
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        w = p.x * q.y - q.x * p.y
        a += w
        cx += (p.x + q.x) * w
        cy += (p.y + q.y) * w
    if abs(a) < 1e-300:
        return Point(sum(p.x for p in poly) / n, sum(p.y for p in poly) / n)
    return Point(cx / (3.0 * a), cy / (3.0 * a))


def point_in_kernel(h: Hole, p: Point, strict: bool = True) -> bool:
    k = h.kernel
    n = len(k)
    if n < 3:
        return False
    for i in range(n):
        s = orient(k[i], k[(i + 1) % n], p)
        if s != POSITIVE and (strict or s != 0):
            return False
    return True


def fan_min_angle(h: Hole, p: Point) -> float:
    if not point_in_kernel(h, p):
        raise ValueError(f"point {p} outside hole kernel")
    return _fan_min(h, p)


def _fan_min(h: Hole, p: Point) -> float:
    best = math.inf
    b = h.boundary
    m = len(b)
    for i in range(m):
        q = b[i]
        r = b[(i + 1) % m]
        best = min(best, angle_at(p, q, r), angle_at(q, r, p), angle_at(r, p, q))
    return best


def level_membership(h: Hole, p: Point, x: float) -> bool:
    return point_in_kernel(h, p) and _fan_min(h, p) >= x


def _norm_angle(a: float) -> float:
    while a > math.pi:
        a -= 2.0 * math.pi
    while a < -math.pi:
        a += 2.0 * math.pi
    return a


def fan_angle_terms(h: Hole, p: Point):
    """All 3k fan angles at p with their gradients with respect to p."""
    out = []
    b = h.boundary
    m = len(b)
    for i in range(m):
        q = b[i]
        r = b[(i + 1) % m]
        out.extend(_triangle_terms(p, q, r))
    return out


def _triangle_terms(p: Point, q: Point, r: Point):
    ux, uy = q.x - p.x, q.y - p.y
    vx, vy = r.x - p.x, r.y - p.y
    u2 = ux * ux + uy * uy
    v2 = vx * vx + vy * vy
    # apex angle at p: |theta_v - theta_u|; both rays move with p
    s = _norm_angle(math.atan2(vy, vx) - math.atan2(uy, ux))
    sgn = 1.0 if s >= 0 else -1.0
    g_apex = (sgn * ((vy / v2) - (uy / u2)), sgn * ((-vx / v2) - (-ux / u2)))
    apex = abs(s)
    # angle at q between rays to p and to r; only the ray to p moves
    wx, wy = p.x - q.x, p.y - q.y
    w2 = wx * wx + wy * wy
    zx, zy = r.x - q.x, r.y - q.y
    sq = _norm_angle(math.atan2(zy, zx) - math.atan2(wy, wx))
    sgnq = 1.0 if sq >= 0 else -1.0
    g_q = (sgnq * (wy / w2), sgnq * (-wx / w2))
    at_q = abs(sq)
    # angle at r, symmetric
    wx2, wy2 = p.x - r.x, p.y - r.y
    w22 = wx2 * wx2 + wy2 * wy2
    zx2, zy2 = q.x - r.x, q.y - r.y
    sr = _norm_angle(math.atan2(zy2, zx2) - math.atan2(wy2, wx2))
    sgnr = 1.0 if sr >= 0 else -1.0
    g_r = (sgnr * (wy2 / w22), sgnr * (-wx2 / w22))
    at_r = abs(sr)
    return [(apex, g_apex), (at_q, g_q), (at_r, g_r)]


def optimize_in_kernel(h: Hole, eps_angle: float = EPS_ANGLE,
                       max_iter: int = 200) -> tuple[Point, float, int]:
    """Maximize the smallest fan angle over the kernel.

    Maintains a convex localization polygon; at each step the centroid is
    evaluated and the polygon is cut by the supporting half-planes of the
    active (minimal) angle constraints, valid because each angle's
    superlevel sets are convex.
    """
    poly = list(h.kernel)
    if len(poly) < 3 or _polygon_area(poly) <= 0.0:
        raise DegenerateKernelError("kernel has no interior")
    best_p = None
    best_v = -math.inf
    stalled = 0
    it = 0
    for it in range(1, max_iter + 1):
        c = _polygon_centroid(poly)
        terms = fan_angle_terms(h, c)
        f = min(v for v, _ in terms)
        if f > best_v + eps_angle:
            stalled = 0
        else:
            stalled += 1
        if f > best_v:
            best_v = f
            best_p = c
        if stalled >= 20:
            break
        active = [(v, g) for v, g in terms if v <= f + eps_angle]
        gx = sum(g[0] for _, g in active) / len(active)
        gy = sum(g[1] for _, g in active) / len(active)
        if math.hypot(gx, gy) < 1e-14:
            break  # stationary: optimum reached
        cuts = [g for _, g in active]
        if len(active) > 1:
            cuts.append((gx, gy))
        for (cx, cy) in cuts:
            # keep {p : (cx, cy) . (p - c) >= 0}, the left side of the
            # directed line through c with direction (cy, -cx)
            poly = clip_halfplane(poly, cy, -cx, c)
            if len(poly) < 3:
                break
        if len(poly) < 3:
            break
        if _polygon_diameter(poly) < 1e-10:
            break
    return best_p, best_v, it


def _polygon_diameter(poly) -> float:
    return max(math.hypot(p.x - q.x, p.y - q.y)
               for i, p in enumerate(poly) for q in poly[i + 1:])


def region_search(t: Triangulation, arr, hull_indices=None):
    """Best interior placement over all arrangement faces whose unconstrained
    kernel optimum stays inside the face.  Returns the best CellSolution or
    None; faces whose optimum escapes are left to the boundary search."""
    points = list(t.vertices)
    if hull_indices is None:
        from .geom import convex_hull
        hull_indices = convex_hull(points)
    per_tri = [min(t.triangle_angles(i)) for i in range(len(t.triangles))]
    order = sorted(range(len(per_tri)), key=lambda i: per_tri[i])
    best = None
    hole_cache: dict[frozenset, Hole] = {}
    for face in arr.faces:
        if face.is_outer or not face.invalid:
            continue
        hole = hole_cache.get(face.invalid)
        if hole is None:
            # Star-shapedness is only guaranteed for insertion points inside
            # the hull; faces lying outside it can have pinched unions.
            try:
                hole = hole_for(t, face.invalid)
            except HoleStructureError:
                continue
            hole_cache[face.invalid] = hole
        try:
            p, v, iters = optimize_in_kernel(hole)
        except DegenerateKernelError:
            continue
        if not point_in_hull(points, hull_indices, p):
            continue
        try:
            inside = arr.locate(p) == face.id
        except Exception:
            inside = False
        if not inside:
            continue
        rest = next((per_tri[i] for i in order if i not in face.invalid),
                    math.inf)
        sol = CellSolution(face.id, p, v, min(v, rest), True, iters)
        if best is None or (sol.overall_value, -sol.face) > \
                (best.overall_value, -best.face):
            best = sol
    return best
