"""Brute-force grid oracle for ground-truth placement values.

The unconstrained fast path groups grid points by their vector of disk
memberships (all points in a group carve the same hole), evaluates the fan
angles for each group with numpy, and cross-checks a subsample against an
independent triangulation route (scipy's Qhull wrapper).  The constrained
path rebuilds the constrained triangulation per grid point.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geom import Point, convex_hull
from .triangulation import build_delaunay, delaunay_circles, evaluate_insertion


@dataclass
class OracleResult:
    point: Point
    value: float
    resolution: int
    evaluations: int
    warnings: list[str] = field(default_factory=list)


def grid_oracle(points: list[Point], constraints=None, resolution: int = 400,
                threads: int = 0, cross_check: bool = True,
                refine: bool = True) -> OracleResult:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    constraints = list(constraints or [])
    if constraints:
        result = _constrained_oracle(points, constraints, resolution)
    else:
        result = _fast_oracle(points, resolution, threads, cross_check)
    if refine:
        _refine(points, constraints, result)
    return result


def _refine(points, constraints, result: OracleResult, rounds: int = 3):
    """Local 9x9 subgrid descent around the coarse argmax; keeps the oracle
    a pure max-over-evaluated-points while recovering the resolution lost
    to the global grid spacing."""
    hull = convex_hull(points)
    hx = [points[i].x for i in hull]
    hy = [points[i].y for i in hull]
    h = max(max(hx) - min(hx), max(hy) - min(hy)) / (result.resolution - 1)
    best, bestp = result.value, result.point
    for _ in range(rounds):
        center = bestp
        for dx in np.linspace(-h, h, 9):
            for dy in np.linspace(-h, h, 9):
                p = Point(center.x + float(dx), center.y + float(dy))
                try:
                    v = evaluate_insertion(points, constraints, p)
                except Exception:
                    continue
                result.evaluations += 1
                if v > best:
                    best, bestp = v, p
        h /= 4.0
    result.value, result.point = best, bestp


def _grid(points, resolution):
    hull = convex_hull(points)
    hx = [points[i].x for i in hull]
    hy = [points[i].y for i in hull]
    xs = np.linspace(min(hx), max(hx), resolution)
    ys = np.linspace(min(hy), max(hy), resolution)
    X, Y = np.meshgrid(xs, ys)
    return hull, X.ravel(), Y.ravel(), (xs[1] - xs[0], ys[1] - ys[0])


def _inside_hull_mask(points, hull, X, Y, margin):
    keep = np.ones(X.shape, dtype=bool)
    m = len(hull)
    for i in range(m):
        a = points[hull[i]]
        b = points[hull[(i + 1) % m]]
        cross = (b.x - a.x) * (Y - a.y) - (b.y - a.y) * (X - a.x)
        keep &= cross > margin * math.hypot(b.x - a.x, b.y - a.y)
    return keep


def _fast_oracle(points, resolution, threads, cross_check):
    t = build_delaunay(points)
    circles = delaunay_circles(t)
    per_tri = np.array([min(t.triangle_angles(i))
                        for i in range(len(t.triangles))])
    hull, X, Y, (hx, hy) = _grid(points, resolution)
    scale = max(max(abs(p.x), abs(p.y)) for p in points) + 1.0
    tol = 1e-9 * scale

    # near-degenerate grid points are nudged half a step instead of skipped
    nudge = np.zeros(X.shape, dtype=bool)
    for c in circles:
        nudge |= np.abs(np.hypot(X - c.center.x, Y - c.center.y) - c.radius) <= tol
    for p in points:
        nudge |= np.hypot(X - p.x, Y - p.y) <= max(tol, 1e-6 * scale)
    X = np.where(nudge, X + 0.5 * hx, X)
    Y = np.where(nudge, Y + 0.5 * hy, Y)

    keep = _inside_hull_mask(points, hull, X, Y, tol)
    X, Y = X[keep], Y[keep]
    evaluations = int(X.size)
    warnings: list[str] = []
    if evaluations == 0:
        raise ValueError("no admissible grid point inside the hull")

    masks = np.zeros((X.size, len(circles)), dtype=bool)
    for ci, c in enumerate(circles):
        masks[:, ci] = (X - c.center.x) ** 2 + (Y - c.center.y) ** 2 \
            < c.radius ** 2
    packed = np.packbits(masks, axis=1)
    _, group_ids = np.unique(packed, axis=0, return_inverse=True)
    values = np.full(X.shape, -np.inf)

    def run_group(g):
        idx = np.where(group_ids == g)[0]
        invalid = frozenset(np.where(masks[idx[0]])[0].tolist())
        if not invalid:
            return idx, None
        boundary = _union_boundary(t, invalid)
        if boundary is None:
            return idx, None
        rest = float(np.min(np.delete(per_tri, list(invalid)))) \
            if len(invalid) < len(per_tri) else math.inf
        fan = _fan_values(t, boundary, X[idx], Y[idx])
        return idx, np.minimum(fan, rest)

    groups = range(int(group_ids.max()) + 1)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(run_group, groups))
    else:
        results = [run_group(g) for g in groups]
    slow = []
    for idx, vals in results:
        if vals is None:
            slow.extend(idx.tolist())
        else:
            values[idx] = vals
    for i in slow:
        try:
            values[i] = evaluate_insertion(points, [], Point(float(X[i]), float(Y[i])))
        except Exception:
            values[i] = -math.inf

    if cross_check:
        warnings.extend(
            _cross_check(points, X, Y, values))

    best = float(np.max(values))
    ties = np.where(values >= best)[0]
    besti = min(ties, key=lambda i: (X[i], Y[i]))
    return OracleResult(Point(float(X[besti]), float(Y[besti])), best,
                        resolution, evaluations, warnings)


def _union_boundary(t, invalid):
    """Counterclockwise boundary vertex cycle of the union of the given
    triangles, or None if the union is not a simple polygon."""
    directed = set()
    for ti in invalid:
        tri = t.triangles[ti]
        for e in range(3):
            directed.add((tri[e], tri[(e + 1) % 3]))
    edges = [e for e in directed if (e[1], e[0]) not in directed]
    succ = {}
    for a, b in edges:
        if a in succ:
            return None
        succ[a] = b
    start = edges[0][0]
    cycle = [start]
    cur = succ[start]
    while cur != start:
        cycle.append(cur)
        if len(cycle) > len(succ):
            return None
        cur = succ.get(cur)
        if cur is None:
            return None
    if len(cycle) != len(succ):
        return None
    return [t.vertices[i] for i in cycle]


def _fan_values(t, boundary, X, Y):
    """Smallest fan angle for each candidate point, vectorized."""
    fan = np.full(X.shape, np.inf)
    m = len(boundary)
    for e in range(m):
        q = boundary[e]
        r = boundary[(e + 1) % m]
        fan = np.minimum(fan, _tri_min_angles(X, Y, q, r))
    return fan


def _tri_min_angles(X, Y, q, r):
    a2 = (q.x - X) ** 2 + (q.y - Y) ** 2
    b2 = (r.x - X) ** 2 + (r.y - Y) ** 2
    c2 = (r.x - q.x) ** 2 + (r.y - q.y) ** 2
    out = None
    for (u2, v2, w2) in ((a2, b2, c2), (a2, c2, b2), (b2, c2, a2)):
        denom = 2.0 * np.sqrt(u2 * v2)
        cos = np.where(denom > 0.0, (u2 + v2 - w2) / np.maximum(denom, 1e-300), -1.0)
        ang = np.arccos(np.clip(cos, -1.0, 1.0))
        out = ang if out is None else np.minimum(out, ang)
    return out


def _cross_check(points, X, Y, values, samples: int = 64):
    """Validate a spread of fast-path values against an independent
    triangulation computed with scipy's Qhull bindings."""
    try:
        from scipy.spatial import Delaunay as QhullDelaunay
    except ImportError:
        return ["scipy unavailable: oracle cross-check skipped"]
    warnings = []
    base = np.array([[p.x, p.y] for p in points])
    idxs = np.unique(np.linspace(0, X.size - 1, min(samples, X.size)).astype(int))
    for i in idxs:
        if not np.isfinite(values[i]):
            continue
        aug = np.vstack([base, [X[i], Y[i]]])
        try:
            qt = QhullDelaunay(aug)
        except Exception:
            continue
        ref = _qhull_min_angle(aug, qt.simplices)
        if abs(ref - values[i]) > 1e-6:
            warnings.append(
                f"oracle cross-check mismatch at ({X[i]}, {Y[i]}): "
                f"fast {values[i]}, reference {ref}")
    return warnings


def _qhull_min_angle(coords, simplices):
    best = math.inf
    for tri in simplices:
        a, b, c = (coords[v] for v in tri)
        for (p, q, r) in ((a, b, c), (b, c, a), (c, a, b)):
            u = q - p
            v = r - p
            cos = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
            best = min(best, math.acos(min(1.0, max(-1.0, cos))))
    return best


def _constrained_oracle(points, constraints, resolution):
    hull, X, Y, (hx, hy) = _grid(points, resolution)
    scale = max(max(abs(p.x), abs(p.y)) for p in points) + 1.0
    tol = 1e-9 * scale
    keep = _inside_hull_mask(points, hull, X, Y, tol)
    X, Y = X[keep], Y[keep]
    best = -math.inf
    bestp = None
    evals = 0
    for x, y in zip(X, Y):
        p = Point(float(x), float(y))
        near = any(_pt_seg_dist(p, points[i], points[j]) <= tol
                   for (i, j) in constraints)
        if near:
            p = Point(p.x + 0.5 * hx, p.y + 0.5 * hy)
        try:
            v = evaluate_insertion(points, constraints, p)
        except Exception:
            continue
        evals += 1
        if v > best or (v == best and (p.x, p.y) < (bestp.x, bestp.y)):
            best, bestp = v, p
    if bestp is None:
        raise ValueError("no admissible grid point inside the hull")
    return OracleResult(bestp, best, resolution, evals)


def _pt_seg_dist(p, a, b):
    vx, vy = b.x - a.x, b.y - a.y
    wx, wy = p.x - a.x, p.y - a.y
    L2 = vx * vx + vy * vy
    u = 0.0 if L2 == 0.0 else max(0.0, min(1.0, (wx * vx + wy * vy) / L2))
    return math.hypot(wx - u * vx, wy - u * vy)
