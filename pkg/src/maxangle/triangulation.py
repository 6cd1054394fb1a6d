"""Delaunay and constrained Delaunay triangulations.

Construction is randomized incremental insertion with flip-based
legalization; constraint edges are inserted afterwards by removing the
crossed triangles and retriangulating the two resulting pseudo-polygons.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .geom import (
    DegeneracyError,
    NEGATIVE,
    POSITIVE,
    ZERO,
    Circle,
    Point,
    angle_at,
    circumcircle,
    convex_hull,
    in_disk,
    orient,
    point_in_hull,
)


class OutsideHullError(ValueError):
    """Candidate point is not strictly inside the convex hull."""


class ConstraintError(ValueError):
    """Invalid constraint set (crossing segments, bad endpoints, ...)."""


@dataclass(frozen=True)
class Triangulation:
    vertices: tuple[Point, ...]
    triangles: tuple[tuple[int, int, int], ...]   # ccw vertex index triples
    neighbors: tuple[tuple[int | None, int | None, int | None], ...]
    constrained_edges: frozenset[frozenset[int]] = frozenset()

    def triangle_points(self, t: int) -> tuple[Point, Point, Point]:
        i, j, k = self.triangles[t]
        return self.vertices[i], self.vertices[j], self.vertices[k]

    def edges(self) -> set[frozenset[int]]:
        out = set()
        for tri in self.triangles:
            for e in range(3):
                out.add(frozenset((tri[e], tri[(e + 1) % 3])))
        return out

    def triangle_angles(self, t: int) -> tuple[float, float, float]:
        a, b, c = self.triangle_points(t)
        return angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)


def min_angle(t: Triangulation) -> float:
    if not t.triangles:
        raise ValueError("min_angle of an empty triangulation")
    return min(min(t.triangle_angles(i)) for i in range(len(t.triangles)))


def delaunay_circles(t: Triangulation) -> list[Circle]:
    """Circumcircle of each triangle, index-aligned with t.triangles."""
    return [circumcircle(*t.triangle_points(i)) for i in range(len(t.triangles))]


def _make_ccw(i: int, j: int, k: int, pts) -> tuple[int, int, int]:
    if orient(pts[i], pts[j], pts[k]) == POSITIVE:
        return (i, j, k)
    return (i, k, j)


class _Builder:
    """Mutable triangulation under incremental insertion.

    `cocircular` controls what an exact in-circle tie does during
    legalization: "error" raises, "collect" records the undecided edge and
    leaves it unflipped.
    """

    def __init__(self, points: list[Point], cocircular: str = "error"):
        self.pts = points
        self.tris: dict[int, tuple[int, int, int]] = {}
        self.edge: dict[tuple[int, int], int] = {}
        self.constrained: set[frozenset[int]] = set()
        self.cocircular = cocircular
        self.ambiguous: set[frozenset[int]] = set()
        self._next = 0

    # -- structure maintenance -------------------------------------------

    def _add(self, i: int, j: int, k: int) -> int:
        tid = self._next
        self._next += 1
        self.tris[tid] = (i, j, k)
        for a, b in ((i, j), (j, k), (k, i)):
            self.edge[(a, b)] = tid
        return tid

    def _remove(self, tid: int):
        i, j, k = self.tris.pop(tid)
        for a, b in ((i, j), (j, k), (k, i)):
            del self.edge[(a, b)]

    def hull_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edge if (e[1], e[0]) not in self.edge]

    # -- point insertion --------------------------------------------------

    def start(self, i: int, j: int, k: int):
        self._add(*_make_ccw(i, j, k, self.pts))

    def insert(self, pi: int):
        p = self.pts[pi]
        hit = self._locate(p)
        if hit is None:
            self._insert_outside(pi)
        else:
            tid, on_edge = hit
            if on_edge is None:
                self._insert_in_triangle(pi, tid)
            else:
                self._insert_on_edge(pi, on_edge)

    def _locate(self, p: Point):
        """Return (tid, edge-or-None) for the triangle containing p, or None
        if p is outside the current hull."""
        for tid, (i, j, k) in self.tris.items():
            s1 = orient(self.pts[i], self.pts[j], p)
            if s1 == NEGATIVE:
                continue
            s2 = orient(self.pts[j], self.pts[k], p)
            if s2 == NEGATIVE:
                continue
            s3 = orient(self.pts[k], self.pts[i], p)
            if s3 == NEGATIVE:
                continue
            zeros = [(i, j), (j, k), (k, i)][0 if s1 == ZERO else 1 if s2 == ZERO else 2] \
                if (s1 == ZERO or s2 == ZERO or s3 == ZERO) else None
            if sum(s == ZERO for s in (s1, s2, s3)) > 1:
                raise DegeneracyError("new point coincides with a vertex")
            return tid, zeros
        return None

    def _insert_in_triangle(self, pi: int, tid: int):
        i, j, k = self.tris[tid]
        self._remove(tid)
        self._add(i, j, pi)
        self._add(j, k, pi)
        self._add(k, i, pi)
        for a, b in ((i, j), (j, k), (k, i)):
            self._legalize(a, b, pi)

    def _insert_on_edge(self, pi: int, e: tuple[int, int]):
        a, b = e
        t1 = self.edge[(a, b)]
        t2 = self.edge.get((b, a))
        if frozenset((a, b)) in self.constrained:
            raise DegeneracyError("new point lies on a constrained edge")
        c = next(v for v in self.tris[t1] if v not in (a, b))
        self._remove(t1)
        # (a, b, c) was ccw and pi is interior to segment ab, so both halves
        # stay ccw.
        self._add(a, pi, c)
        self._add(pi, b, c)
        todo = [(c, a), (b, c)]
        if t2 is not None:
            d = next(v for v in self.tris[t2] if v not in (a, b))
            self._remove(t2)
            self._add(pi, a, d)
            self._add(b, pi, d)
            todo += [(a, d), (d, b)]
        for u, v in todo:
            self._legalize(u, v, pi)

    def _insert_outside(self, pi: int):
        p = self.pts[pi]
        new_edges = []
        for (a, b) in self.hull_edges():
            if orient(self.pts[a], self.pts[b], p) == NEGATIVE:
                self._add(b, a, pi)
                new_edges.append((b, a))
        if not new_edges:
            raise DegeneracyError("no hull edge visible from outside point "
                                  "(collinear input?)")
        for a, b in new_edges:
            self._legalize(a, b, pi)

    def _legalize(self, a: int, b: int, p: int):
        """Edge (a, b) of ccw triangle (a, b, p): flip if the opposite vertex
        invalidates it, recursing on the exposed edges."""
        stack = [(a, b, p)]
        while stack:
            a, b, p = stack.pop()
            t1 = self.edge.get((a, b))
            if t1 is None or self.tris[t1] not in ((a, b, p), (b, p, a), (p, a, b)):
                continue
            if frozenset((a, b)) in self.constrained:
                continue
            t2 = self.edge.get((b, a))
            if t2 is None:
                continue
            d = next(v for v in self.tris[t2] if v not in (a, b))
            s = in_disk(self.pts[a], self.pts[b], self.pts[p], self.pts[d])
            if s == ZERO:
                if self.cocircular == "error":
                    raise DegeneracyError(
                        f"cocircular points during insertion: {a},{b},{p},{d}")
                self.ambiguous.add(frozenset((a, b)))
                continue
            if s == POSITIVE:
                self._remove(t1)
                self._remove(t2)
                self._add(a, d, p)
                self._add(d, b, p)
                stack.append((a, d, p))
                stack.append((d, b, p))

    # -- constraint insertion ---------------------------------------------

    def insert_constraint(self, i: int, j: int):
        if (i, j) in self.edge or (j, i) in self.edge:
            self.constrained.add(frozenset((i, j)))
            return
        upper, lower = self._cut_channel(i, j)
        self._retriangulate(i, j, upper, +1)
        self._retriangulate(i, j, lower, -1)
        self.constrained.add(frozenset((i, j)))

    def _cut_channel(self, i: int, j: int):
        """Remove the triangles properly crossed by segment i-j; return the
        channel vertices above and below the segment, in crossing order."""
        pi, pj = self.pts[i], self.pts[j]
        cur = None
        for tid, tri in self.tris.items():
            if i not in tri:
                continue
            idx = tri.index(i)
            a, b = tri[(idx + 1) % 3], tri[(idx + 2) % 3]
            sa = orient(pi, pj, self.pts[a])
            sb = orient(pi, pj, self.pts[b])
            if sa == ZERO or sb == ZERO:
                raise ConstraintError(
                    f"constraint ({i},{j}) passes through another vertex")
            if sa == NEGATIVE and sb == POSITIVE and \
                    orient(self.pts[a], self.pts[b], pi) != \
                    orient(self.pts[a], self.pts[b], pj):
                cur = tid
                break
        if cur is None:
            raise ConstraintError(f"cannot start constraint walk from vertex {i}")
        upper, lower, crossed = [], [], []
        entry = None
        while True:
            tri = self.tris[cur]
            crossed.append(cur)
            if j in tri:
                break
            exit_edge = None
            for e in range(3):
                a, b = tri[e], tri[(e + 1) % 3]
                if (a, b) == entry:
                    continue
                if i in (a, b) or j in (a, b):
                    continue
                sa = orient(pi, pj, self.pts[a])
                sb = orient(pi, pj, self.pts[b])
                if sa == ZERO or sb == ZERO:
                    raise ConstraintError(
                        f"constraint ({i},{j}) passes through vertex {a if sa == ZERO else b}")
                if sa != sb:
                    # the only non-entry edge straddling line ij is the exit
                    exit_edge = (a, b)
                    break
            if exit_edge is None:
                raise ConstraintError(f"constraint walk failed for ({i},{j})")
            a, b = exit_edge
            if frozenset((a, b)) in self.constrained:
                raise ConstraintError(
                    f"constraint ({i},{j}) crosses constrained edge ({a},{b})")
            for v, side in ((a, orient(pi, pj, self.pts[a])),
                            (b, orient(pi, pj, self.pts[b]))):
                lst = upper if side == POSITIVE else lower
                if v not in lst:
                    lst.append(v)
            nxt = self.edge.get((b, a))
            if nxt is None:
                raise ConstraintError(f"constraint ({i},{j}) leaves the hull")
            entry = (b, a)
            cur = nxt
        for tid in crossed:
            self._remove(tid)
        return upper, lower

    def _retriangulate(self, i: int, j: int, channel: list[int], side: int):
        """Fill one side of the cut with constrained-Delaunay triangles.

        `channel` holds the vertices strictly on that side of i->j, ordered
        along the cut; each recursion picks the vertex whose circumcircle
        with the base edge is empty of the other channel vertices.
        """
        if not channel:
            return
        poly = [i] + channel + [j]
        self._retri_rec(poly)
        _ = side

    def _retri_rec(self, poly: list[int]):
        if len(poly) < 3:
            return
        a, b = poly[0], poly[-1]
        inner = poly[1:-1]
        c = inner[0]
        if len(inner) > 1:
            for v in inner[1:]:
                tri = _make_ccw(a, b, c, self.pts)
                if in_disk(self.pts[tri[0]], self.pts[tri[1]], self.pts[tri[2]],
                           self.pts[v]) == POSITIVE:
                    c = v
        self._add(*_make_ccw(a, b, c, self.pts))
        ci = poly.index(c)
        self._retri_rec(poly[:ci + 1])
        self._retri_rec(poly[ci:])

    # -- freezing ---------------------------------------------------------

    def freeze(self) -> Triangulation:
        order = sorted(self.tris)
        remap = {}
        triples = []
        for new_id, tid in enumerate(order):
            remap[tid] = new_id
            triples.append(self.tris[tid])
        neigh = []
        for tri in triples:
            row = []
            for e in range(3):
                a, b = tri[e], tri[(e + 1) % 3]
                other = self.edge.get((b, a))
                row.append(remap[other] if other is not None else None)
            neigh.append(tuple(row))
        return Triangulation(tuple(self.pts), tuple(triples), tuple(neigh),
                             frozenset(self.constrained))


def _build(points: list[Point], constraints, seed: int,
           cocircular: str) -> tuple[Triangulation, set[frozenset[int]]]:
    n = len(points)
    if n < 3:
        raise ValueError("need at least 3 points")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    # find a non-collinear third point for the seed triangle
    k = next((m for m in range(2, n)
              if orient(points[order[0]], points[order[1]], points[order[m]]) != ZERO),
             None)
    if k is None:
        raise DegeneracyError("all points are collinear")
    order[2], order[k] = order[k], order[2]
    b = _Builder(list(points), cocircular=cocircular)
    b.start(order[0], order[1], order[2])
    for pi in order[3:]:
        b.insert(pi)
    for (i, j) in (constraints or []):
        b.insert_constraint(i, j)
    return b.freeze(), b.ambiguous


def validate_constraints(points: list[Point], constraints) -> None:
    n = len(points)
    seen = set()
    for (i, j) in constraints:
        if not (0 <= i < n and 0 <= j < n):
            raise ConstraintError(f"constraint endpoint out of range: ({i},{j})")
        if i == j:
            raise ConstraintError(f"degenerate constraint ({i},{j})")
        key = frozenset((i, j))
        if key in seen:
            raise ConstraintError(f"duplicate constraint ({i},{j})")
        seen.add(key)
    segs = list(constraints)
    for a in range(len(segs)):
        for b in range(a + 1, len(segs)):
            if _segments_cross(points, segs[a], segs[b]):
                raise ConstraintError(
                    f"constraints {tuple(segs[a])} and {tuple(segs[b])} cross")
    for (i, j) in segs:
        for m in range(n):
            if m in (i, j):
                continue
            if orient(points[i], points[j], points[m]) == ZERO and \
                    _between(points[i], points[j], points[m]):
                raise ConstraintError(
                    f"point {m} lies on constraint ({i},{j})")


def _between(a: Point, b: Point, m: Point) -> bool:
    return (min(a.x, b.x) <= m.x <= max(a.x, b.x)
            and min(a.y, b.y) <= m.y <= max(a.y, b.y))


def _segments_cross(pts, s1, s2) -> bool:
    i, j = s1
    k, l = s2
    if {i, j} & {k, l}:
        return False
    d1 = orient(pts[i], pts[j], pts[k])
    d2 = orient(pts[i], pts[j], pts[l])
    d3 = orient(pts[k], pts[l], pts[i])
    d4 = orient(pts[k], pts[l], pts[j])
    return d1 != d2 and d3 != d4 and ZERO not in (d1, d2, d3, d4) or \
        any(s == ZERO and _between(pts[a], pts[b], pts[m])
            for (a, b), (s, m) in (((i, j), (d1, k)), ((i, j), (d2, l)),
                                   ((k, l), (d3, i)), ((k, l), (d4, j))))


def build_delaunay(points: list[Point], seed: int = 0) -> Triangulation:
    t, _ = _build(points, None, seed, cocircular="error")
    _check_euler(points, t)
    return t


def build_cdt(points: list[Point], constraints, seed: int = 0) -> Triangulation:
    validate_constraints(points, constraints)
    t, _ = _build(points, constraints, seed, cocircular="error")
    _check_euler(points, t)
    return t


def _check_euler(points, t: Triangulation):
    h = len(convex_hull(list(points)))
    expect = 2 * len(points) - h - 2
    if len(t.triangles) != expect:
        raise RuntimeError(
            f"triangle count {len(t.triangles)} != 2n-h-2 = {expect}")


def evaluate_insertion(points: list[Point], constraints, p: Point,
                       seed: int = 0) -> float:
    """Min angle of the (constrained) Delaunay triangulation of points + p.

    If p is exactly cocircular with a Delaunay disk, both completions of
    each ambiguous quadrilateral are tried and the larger min angle wins.
    """
    scale = max(max(abs(q.x), abs(q.y)) for q in points) + 1.0
    for q in points:
        if math.hypot(q.x - p.x, q.y - p.y) <= 1e-12 * scale:
            raise ValueError(f"insertion point coincides with input point {q}")
    hull = convex_hull(list(points))
    if not point_in_hull(list(points), hull, p):
        raise OutsideHullError(f"insertion point {p} not strictly inside hull")
    if constraints:
        validate_constraints(points, constraints)
    pts2 = list(points) + [p]
    t, ambiguous = _build(pts2, constraints, seed, cocircular="collect")
    per_tri = [min(t.triangle_angles(i)) for i in range(len(t.triangles))]
    best = min(per_tri)
    for edge in ambiguous:
        best = max(best, _flipped_value(t, per_tri, edge))
    return best


def _flipped_value(t: Triangulation, per_tri: list[float],
                   edge: frozenset[int]) -> float:
    u, v = tuple(edge)
    holders = [i for i, tri in enumerate(t.triangles) if u in tri and v in tri]
    if len(holders) != 2:
        return -math.inf
    t1, t2 = holders
    a = next(w for w in t.triangles[t1] if w not in (u, v))
    b = next(w for w in t.triangles[t2] if w not in (u, v))
    pts = t.vertices
    if orient(pts[a], pts[b], pts[u]) == orient(pts[a], pts[b], pts[v]):
        return -math.inf  # quad not strictly convex; flip invalid
    rest = min((per_tri[i] for i in range(len(per_tri)) if i not in (t1, t2)),
               default=math.inf)
    new1 = _make_ccw(a, b, u, pts)
    new2 = _make_ccw(a, b, v, pts)
    angs = []
    for (i, j, k) in (new1, new2):
        angs += [angle_at(pts[i], pts[j], pts[k]),
                 angle_at(pts[j], pts[k], pts[i]),
                 angle_at(pts[k], pts[i], pts[j])]
    return min(rest, min(angs))


# -- exhaustive enumeration (verification aid) ----------------------------

def all_triangulations(points: list[Point]) -> list[frozenset[tuple[int, int, int]]]:
    """Every triangulation of the point set, enumerated by walking the flip
    graph from the Delaunay triangulation (the flip graph is connected)."""
    t0 = build_delaunay(points)
    pts = list(points)
    start = frozenset(tuple(sorted(tri)) for tri in t0.triangles)
    seen = {start}
    queue = [start]
    while queue:
        state = queue.pop()
        for nxt in _flip_neighbors(state, pts):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return list(seen)


def _flip_neighbors(state, pts):
    tris = list(state)
    edge_holders: dict[frozenset[int], list[int]] = {}
    for idx, tri in enumerate(tris):
        for e in range(3):
            edge_holders.setdefault(frozenset((tri[e], tri[(e + 1) % 3])),
                                    []).append(idx)
    out = []
    for edge, holders in edge_holders.items():
        if len(holders) != 2:
            continue
        u, v = tuple(edge)
        a = next(w for w in tris[holders[0]] if w not in edge)
        b = next(w for w in tris[holders[1]] if w not in edge)
        if orient(pts[a], pts[b], pts[u]) == orient(pts[a], pts[b], pts[v]):
            continue
        if orient(pts[u], pts[v], pts[a]) == orient(pts[u], pts[v], pts[b]):
            continue
        new = set(state)
        new.discard(tris[holders[0]])
        new.discard(tris[holders[1]])
        new.add(tuple(sorted((a, b, u))))
        new.add(tuple(sorted((a, b, v))))
        out.append(frozenset(new))
    return out


def min_angle_of_triples(points, triples) -> float:
    vals = []
    for (i, j, k) in triples:
        a, b, c = points[i], points[j], points[k]
        vals += [angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)]
    return min(vals)
