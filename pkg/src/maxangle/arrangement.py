"""Planar arrangement of circles (plus optional constraint segments).

Built by brute-force pairwise intersection: every crossing becomes a vertex,
curves are split into arcs/pieces, and faces are traced through the
half-edge structure with tangent-direction rotation at each vertex.  Each
face carries a guaranteed-interior sample point from which its depth and
invalidated-triangle set are derived.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geom import (
    Circle,
    DegeneracyError,
    Point,
    circle_intersections,
    orient,
    POSITIVE,
)

TWO_PI = 2.0 * math.pi


class BoundaryAmbiguityError(ValueError):
    """Query point lies (within tolerance) on an arrangement curve."""


@dataclass
class HalfEdge:
    id: int
    kind: str                 # "arc" or "seg"
    curve: int                # circle id or segment id
    tail: int | None          # vertex ids; None only for vertex-free loops
    head: int | None
    twin: int = -1
    next: int = -1
    face: int = -1
    # arc geometry: sweep from t0 to t1, ccw if sweep>0
    t0: float = 0.0
    t1: float = 0.0
    sweep: float = 0.0        # signed sweep; +2pi for a full ccw loop
    # segment geometry
    p0: Point | None = None
    p1: Point | None = None


@dataclass
class Face:
    id: int
    cycles: list[int] = field(default_factory=list)
    outer_cycle: int | None = None
    sample: Point | None = None
    depth: int = 0
    invalid: frozenset[int] = frozenset()
    inside_hull: bool = False
    is_outer: bool = False


@dataclass(frozen=True)
class ArrangementStats:
    k: int
    v: int
    e: int
    f: int
    d: int
    d_bar: float
    m: int
    X: int
    x: tuple[int, ...]
    u: int
    e_dt: int


class Arrangement:
    def __init__(self, circles, segments, snap_points, hull_points):
        self.circles: list[Circle] = list(circles)
        self.segments: list[tuple[Point, Point]] = list(segments or [])
        self.snap_points = list(snap_points or [])
        self.hull_points = list(hull_points or [])
        # Tolerance follows the input-point scale when available: circle
        # radii can be orders of magnitude larger (sliver circumcircles)
        # while constructed vertices stay accurate near the point set.
        self.extent = max(
            [c.radius + abs(c.center.x) + abs(c.center.y) for c in self.circles]
            + [1.0])
        if self.snap_points:
            self.scale = max(max(abs(p.x), abs(p.y))
                             for p in self.snap_points) + 1.0
        else:
            self.scale = self.extent
        self.tol = 1e-9 * self.scale
        self.vertices: list[Point] = []
        self.halfedges: list[HalfEdge] = []
        self.faces: list[Face] = []
        self.outer_face: int = -1
        self.cycles: list[list[int]] = []
        self.circle_pairs: set[tuple[int, int]] = set()
        # per circle: sorted [(theta, vid)], and arcs [(t_lo, t_hi, ccw_he, cw_he)]
        self._on_circle: list[list[tuple[float, int]]] = []
        self._arcs: list[list[tuple[float, float, int, int]]] = []
        self._on_segment: list[list[tuple[float, int]]] = []
        self._pieces: list[list[tuple[float, float, int, int]]] = []
        self.warnings: list[str] = []
        self._build()

    # ------------------------------------------------------------------
    # construction

    def _build(self):
        self._check_duplicates()
        self._make_vertices()
        self._make_halfedges()
        self._link_next()
        self._trace_cycles()
        self._assemble_faces()
        self._classify_faces()

    def _check_duplicates(self):
        cs = self.circles
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                # tolerance relative to the pair, not the largest circle
                pair_tol = 1e-9 * max(cs[i].radius, cs[j].radius)
                if (math.hypot(cs[i].center.x - cs[j].center.x,
                               cs[i].center.y - cs[j].center.y) <= pair_tol
                        and abs(cs[i].radius - cs[j].radius) <= pair_tol):
                    raise DegeneracyError(f"duplicate circles {i} and {j}")

    def _make_vertices(self):
        raw: list[Point] = []
        for i in range(len(self.circles)):
            for j in range(i + 1, len(self.circles)):
                pts = circle_intersections(self.circles[i], self.circles[j])
                if pts:
                    self.circle_pairs.add((i, j))
                raw.extend(pts)
        for si, (a, b) in enumerate(self.segments):
            raw.append(a)
            raw.append(b)
            for ci, c in enumerate(self.circles):
                raw.extend(_segment_circle_hits(a, b, c))
        # snap to input points, then cluster
        merged: list[Point] = []
        for p in raw:
            p = self._snap(p)
            for k, q in enumerate(merged):
                if math.hypot(p.x - q.x, p.y - q.y) <= self.tol:
                    break
            else:
                merged.append(p)
        self.vertices = merged
        # register each vertex on every curve passing through it
        self._on_circle = [[] for _ in self.circles]
        self._on_segment = [[] for _ in self.segments]
        for vid, v in enumerate(self.vertices):
            for ci, c in enumerate(self.circles):
                if abs(math.hypot(v.x - c.center.x, v.y - c.center.y)
                       - c.radius) <= self.tol:
                    self._on_circle[ci].append((c.angle_of(v), vid))
            for si, (a, b) in enumerate(self.segments):
                t = _segment_param(a, b, v, self.tol)
                if t is not None:
                    self._on_segment[si].append((t, vid))
        for lst in self._on_circle:
            lst.sort()
        for lst in self._on_segment:
            lst.sort()

    def _snap(self, p: Point) -> Point:
        for q in self.snap_points:
            if math.hypot(p.x - q.x, p.y - q.y) <= self.tol:
                return q
        return p

    def _new_he(self, **kw) -> HalfEdge:
        h = HalfEdge(id=len(self.halfedges), **kw)
        self.halfedges.append(h)
        return h

    def _make_halfedges(self):
        for ci, c in enumerate(self.circles):
            entries = self._on_circle[ci]
            arcs = []
            if not entries:
                h1 = self._new_he(kind="arc", curve=ci, tail=None, head=None,
                                  t0=0.0, t1=0.0, sweep=TWO_PI)
                h2 = self._new_he(kind="arc", curve=ci, tail=None, head=None,
                                  t0=0.0, t1=0.0, sweep=-TWO_PI)
                h1.twin, h2.twin = h2.id, h1.id
                h1.next, h2.next = h1.id, h2.id
                arcs.append((0.0, TWO_PI, h1.id, h2.id))
            else:
                m = len(entries)
                for idx in range(m):
                    t_lo, v_lo = entries[idx]
                    t_hi, v_hi = entries[(idx + 1) % m]
                    sweep = (t_hi - t_lo) % TWO_PI
                    if sweep == 0.0:
                        sweep = TWO_PI  # single vertex: full loop back to it
                    ccw = self._new_he(kind="arc", curve=ci, tail=v_lo,
                                       head=v_hi, t0=t_lo, t1=t_lo + sweep,
                                       sweep=sweep)
                    cw = self._new_he(kind="arc", curve=ci, tail=v_hi,
                                      head=v_lo, t0=t_lo + sweep, t1=t_lo,
                                      sweep=-sweep)
                    ccw.twin, cw.twin = cw.id, ccw.id
                    arcs.append((t_lo, t_lo + sweep, ccw.id, cw.id))
            self._arcs.append(arcs)
        for si, (a, b) in enumerate(self.segments):
            entries = self._on_segment[si]
            pieces = []
            for idx in range(len(entries) - 1):
                t_lo, v_lo = entries[idx]
                t_hi, v_hi = entries[idx + 1]
                pa = self.vertices[v_lo]
                pb = self.vertices[v_hi]
                fwd = self._new_he(kind="seg", curve=si, tail=v_lo, head=v_hi,
                                   p0=pa, p1=pb)
                bwd = self._new_he(kind="seg", curve=si, tail=v_hi, head=v_lo,
                                   p0=pb, p1=pa)
                fwd.twin, bwd.twin = bwd.id, fwd.id
                pieces.append((t_lo, t_hi, fwd.id, bwd.id))
            self._pieces.append(pieces)

    def _stub(self, h: HalfEdge) -> tuple[float, float]:
        """(direction angle, signed curvature) of h leaving its tail."""
        if h.kind == "arc":
            r = self.circles[h.curve].radius
            if h.sweep > 0:
                return ((h.t0 + 0.5 * math.pi) % TWO_PI, 1.0 / r)
            return ((h.t0 - 0.5 * math.pi) % TWO_PI, -1.0 / r)
        d = math.atan2(h.p1.y - h.p0.y, h.p1.x - h.p0.x) % TWO_PI
        return (d, 0.0)

    def _link_next(self):
        at_vertex: dict[int, list[tuple[float, float, int]]] = {}
        for h in self.halfedges:
            if h.tail is None:
                continue
            d, k = self._stub(h)
            at_vertex.setdefault(h.tail, []).append((d, k, h.id))
        pos: dict[int, tuple[int, int]] = {}   # he id -> (vertex, index)
        self._rotation = {}
        for vid, stubs in at_vertex.items():
            stubs.sort()
            self._rotation[vid] = [hid for _, _, hid in stubs]
            for idx, (_, _, hid) in enumerate(stubs):
                pos[hid] = (vid, idx)
        for h in self.halfedges:
            if h.head is None:
                continue
            twin = self.halfedges[h.twin]
            vid, idx = pos[twin.id]
            ring = self._rotation[vid]
            h.next = ring[(idx - 1) % len(ring)]

    def _trace_cycles(self):
        seen = [False] * len(self.halfedges)
        for h in self.halfedges:
            if seen[h.id]:
                continue
            cyc = []
            cur = h.id
            while not seen[cur]:
                seen[cur] = True
                cyc.append(cur)
                cur = self.halfedges[cur].next
            self.cycles.append(cyc)

    def _cycle_area(self, cyc: list[int]) -> float:
        area = 0.0
        for hid in cyc:
            h = self.halfedges[hid]
            if h.kind == "seg":
                area += 0.5 * (h.p0.x * h.p1.y - h.p1.x * h.p0.y)
            else:
                c = self.circles[h.curve]
                a = c.point_at(h.t0)
                b = c.point_at(h.t1)
                area += 0.5 * (a.x * b.y - b.x * a.y)
                s = abs(h.sweep)
                seg_area = 0.5 * c.radius ** 2 * (s - math.sin(s))
                area += seg_area if h.sweep > 0 else -seg_area
        return area

    def _he_offset_sample(self, h: HalfEdge, frac: float = 0.5) -> Point:
        """A point strictly inside face(h): the point at parameter frac along
        the curve, pushed left by a quarter of the clearance to all other
        curves."""
        if h.kind == "arc":
            c = self.circles[h.curve]
            tm = h.t0 + frac * h.sweep
            z = c.point_at(tm)
            tx, ty = -math.sin(tm), math.cos(tm)
            if h.sweep < 0:
                tx, ty = -tx, -ty
            nx, ny = -ty, tx
            own = c.radius
        else:
            z = Point(h.p0.x + frac * (h.p1.x - h.p0.x),
                      h.p0.y + frac * (h.p1.y - h.p0.y))
            dx = h.p1.x - h.p0.x
            dy = h.p1.y - h.p0.y
            ln = math.hypot(dx, dy)
            nx, ny = -dy / ln, dx / ln
            own = ln
        clear = own
        for ci, c in enumerate(self.circles):
            if h.kind == "arc" and ci == h.curve:
                continue
            clear = min(clear, abs(math.hypot(z.x - c.center.x,
                                              z.y - c.center.y) - c.radius))
        for si, (a, b) in enumerate(self.segments):
            if h.kind == "seg" and si == h.curve:
                continue
            clear = min(clear, _point_segment_dist(z, a, b))
        delta = 0.25 * clear
        return Point(z.x + delta * nx, z.y + delta * ny)

    def _assemble_faces(self):
        areas = [self._cycle_area(c) for c in self.cycles]
        tol_area = (10.0 * self.tol) ** 2
        positive = [i for i, a in enumerate(areas) if a > tol_area]
        others = [i for i in range(len(self.cycles)) if i not in set(positive)]
        face_of_cycle: dict[int, int] = {}
        self.faces = []
        for cid in positive:
            f = Face(id=len(self.faces))
            f.cycles.append(cid)
            f.outer_cycle = cid
            self.faces.append(f)
            face_of_cycle[cid] = f.id
        outer = Face(id=len(self.faces), is_outer=True)
        self.faces.append(outer)
        self.outer_face = outer.id
        # assign hole cycles to the innermost containing positive cycle
        order = sorted(positive, key=lambda c: areas[c])
        for cid in others:
            reps = [self._he_offset_sample(self.halfedges[hid])
                    for hid in self.cycles[cid][:8]]
            owner = None
            for pc in order:
                inside = None
                for rep in reps:
                    try:
                        inside = self._point_in_cycle(self.cycles[pc], rep)
                        break
                    except BoundaryAmbiguityError:
                        continue
                if inside is None:
                    # sliver geometry defeats every representative; treat as
                    # outside and let an enclosing cycle claim it
                    self.warnings.append(
                        f"ambiguous containment of cycle {cid} in {pc}")
                    continue
                if inside:
                    owner = pc
                    break
            fid = face_of_cycle[owner] if owner is not None else outer.id
            self.faces[fid].cycles.append(cid)
            face_of_cycle[cid] = fid
        for cid, fid in face_of_cycle.items():
            for hid in self.cycles[cid]:
                self.halfedges[hid].face = fid

    def _classify_faces(self):
        far = Point(self.extent * 4.0 + 1.0, self.extent * 4.0 + 1.0)
        for f in self.faces:
            if f.is_outer:
                f.sample = far
            else:
                f.sample = self._he_offset_sample(
                    self.halfedges[self.cycles[f.outer_cycle][0]])
            inv = frozenset(
                ci for ci, c in enumerate(self.circles)
                if math.hypot(f.sample.x - c.center.x,
                              f.sample.y - c.center.y) < c.radius)
            f.invalid = inv
            f.depth = len(inv)
            f.inside_hull = self._sample_in_hull(f.sample)

    def _sample_in_hull(self, p: Point) -> bool:
        hp = self.hull_points
        if len(hp) < 3:
            return False
        return all(orient(hp[i], hp[(i + 1) % len(hp)], p) == POSITIVE
                   for i in range(len(hp)))

    # ------------------------------------------------------------------
    # queries

    def circle_arcs(self, ci: int):
        """Arcs of circle ci as (t_lo, t_hi, face_inside, face_outside),
        sorted by t_lo; t_hi may exceed 2pi for the wrapping arc."""
        out = []
        for (t_lo, t_hi, ccw_id, cw_id) in self._arcs[ci]:
            out.append((t_lo, t_hi, self.halfedges[ccw_id].face,
                        self.halfedges[cw_id].face))
        return out

    def _point_in_cycle(self, cyc: list[int], p: Point) -> bool:
        for attempt in range(8):
            x = p.x + attempt * 7.0 * self.tol
            count = 0
            ok = True
            for hid in cyc:
                hits = self._ray_hits(self.halfedges[hid], x, p.y)
                if hits is None:
                    ok = False
                    break
                count += hits
            if ok:
                return count % 2 == 1
        raise BoundaryAmbiguityError("ray casting failed to disambiguate")

    def _ray_hits(self, h: HalfEdge, x: float, y: float) -> int | None:
        """Crossings of the upward ray at x above y with h's curve; None if
        the configuration is ambiguous (hit too close to an endpoint)."""
        tol = self.tol
        if h.kind == "seg":
            a, b = h.p0, h.p1
            if abs(a.x - x) <= tol or abs(b.x - x) <= tol:
                return None
            if (a.x < x) == (b.x < x):
                return 0
            t = (x - a.x) / (b.x - a.x)
            yi = a.y + t * (b.y - a.y)
            if abs(yi - y) <= tol:
                return None
            return 1 if yi > y else 0
        c = self.circles[h.curve]
        dx = x - c.center.x
        if abs(c.radius - abs(dx)) <= tol:
            return None  # near-tangent ray
        if abs(dx) > c.radius:
            return 0
        dy = math.sqrt(c.radius ** 2 - dx * dx)
        count = 0
        lo, hi = (h.t0, h.t1) if h.sweep > 0 else (h.t1, h.t0)
        span = abs(h.sweep)
        for yy in (c.center.y + dy, c.center.y - dy):
            th = math.atan2(yy - c.center.y, dx)
            rel = (th - lo) % TWO_PI
            ang_tol = 2.0 * tol / c.radius
            if rel <= ang_tol or abs(span - rel) <= ang_tol \
                    or rel >= TWO_PI - ang_tol:
                if span < TWO_PI - 1e-15 or h.tail is not None:
                    return None  # too close to an arc endpoint
            if rel <= span:
                if abs(yy - y) <= tol:
                    return None
                if yy > y:
                    count += 1
        return count

    def on_any_curve(self, q: Point) -> bool:
        for c in self.circles:
            if abs(math.hypot(q.x - c.center.x, q.y - c.center.y)
                   - c.radius) <= self.tol:
                return True
        for (a, b) in self.segments:
            if _point_segment_dist(q, a, b) <= self.tol:
                return True
        return False

    def locate(self, q: Point) -> int:
        """Face id containing q; raises BoundaryAmbiguityError when q lies
        on (or within tolerance of) an arrangement curve."""
        if self.on_any_curve(q):
            raise BoundaryAmbiguityError(f"point {q} lies on an arrangement curve")
        for attempt in range(8):
            x = q.x + attempt * 7.0 * self.tol
            hit = self._lowest_hit(x, q.y)
            if hit == "ambiguous":
                continue
            if hit is None:
                return self.outer_face
            return hit
        raise BoundaryAmbiguityError(f"point location failed near {q}")

    def _lowest_hit(self, x: float, y: float):
        best_y = math.inf
        best_face = None
        ambiguous_ys: list[float] = []
        for ci, c in enumerate(self.circles):
            dx = x - c.center.x
            if abs(c.radius - abs(dx)) <= self.tol:
                ambiguous_ys.append(c.center.y)  # near-tangent ray
                continue
            if abs(dx) > c.radius:
                continue
            dyv = math.sqrt(c.radius ** 2 - dx * dx)
            for yy in (c.center.y - dyv, c.center.y + dyv):
                if yy <= y:
                    continue
                th = math.atan2(yy - c.center.y, dx) % TWO_PI
                arc = self._arc_at(ci, th)
                if arc == "ambiguous":
                    ambiguous_ys.append(yy)
                    continue
                s = math.sin(th)
                if abs(s) <= 1e-12:
                    ambiguous_ys.append(yy)
                    continue
                if yy >= best_y:
                    continue
                t_lo, t_hi, ccw_id, cw_id = arc
                best_y = yy
                best_face = self.halfedges[ccw_id if s > 0 else cw_id].face
        for si, pieces in enumerate(self._pieces):
            a, b = self.segments[si]
            if abs(a.x - x) <= self.tol or abs(b.x - x) <= self.tol:
                if min(a.x, b.x) - self.tol <= x <= max(a.x, b.x) + self.tol:
                    ambiguous_ys.append(max(a.y, b.y))
                continue
            if (a.x < x) == (b.x < x):
                continue
            t = (x - a.x) / (b.x - a.x)
            yy = a.y + t * (b.y - a.y)
            if yy <= y:
                continue
            piece = next(((lo, hi, f, bwd) for (lo, hi, f, bwd) in pieces
                          if lo - 1e-12 <= t <= hi + 1e-12), None)
            if piece is None:
                ambiguous_ys.append(yy)
                continue
            lo, hi, fwd_id, bwd_id = piece
            if t - lo <= 1e-9 or hi - t <= 1e-9:
                ambiguous_ys.append(yy)
                continue
            if yy >= best_y:
                continue
            dxs = b.x - a.x
            best_y = yy
            best_face = self.halfedges[bwd_id if dxs > 0 else fwd_id].face
        # only ambiguities below the best confirmed hit can change the answer
        if any(ay < best_y + self.tol for ay in ambiguous_ys):
            return "ambiguous"
        return best_face

    def _arc_at(self, ci: int, th: float):
        arcs = self._arcs[ci]
        if len(arcs) == 1 and abs(arcs[0][1] - arcs[0][0] - TWO_PI) < 1e-12 \
                and self.halfedges[arcs[0][2]].tail is None:
            return arcs[0]
        for (t_lo, t_hi, ccw_id, cw_id) in arcs:
            rel = (th - t_lo) % TWO_PI
            span = t_hi - t_lo
            ang_tol = 2.0 * self.tol / self.circles[ci].radius
            if rel <= ang_tol or abs(span - rel) <= ang_tol \
                    or rel >= TWO_PI - ang_tol:
                return "ambiguous"
            if rel < span:
                return (t_lo, t_hi, ccw_id, cw_id)
        return "ambiguous"

    def vertex_degree(self, vid: int) -> int:
        return len(self._rotation.get(vid, []))

    def edge_count(self) -> int:
        return len(self.halfedges) // 2

    def face_adjacencies(self):
        """(face, face, halfedge) triples, one per undirected edge."""
        out = []
        for h in self.halfedges:
            if h.id < h.twin:
                out.append((h.face, self.halfedges[h.twin].face, h.id))
        return out


def _segment_circle_hits(a: Point, b: Point, c: Circle) -> list[Point]:
    dx = b.x - a.x
    dy = b.y - a.y
    fx = a.x - c.center.x
    fy = a.y - c.center.y
    A = dx * dx + dy * dy
    B = 2.0 * (fx * dx + fy * dy)
    C = fx * fx + fy * fy - c.radius ** 2
    disc = B * B - 4.0 * A * C
    if disc <= 0.0:
        return []
    rt = math.sqrt(disc)
    out = []
    for t in ((-B - rt) / (2.0 * A), (-B + rt) / (2.0 * A)):
        if 0.0 <= t <= 1.0:
            out.append(Point(a.x + t * dx, a.y + t * dy))
    return out


def _segment_param(a: Point, b: Point, p: Point, tol: float) -> float | None:
    dx = b.x - a.x
    dy = b.y - a.y
    L2 = dx * dx + dy * dy
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2
    if t < -tol or t > 1.0 + tol:
        return None
    t = min(1.0, max(0.0, t))
    qx = a.x + t * dx
    qy = a.y + t * dy
    if math.hypot(p.x - qx, p.y - qy) > tol:
        return None
    return t


def _point_segment_dist(p: Point, a: Point, b: Point) -> float:
    dx = b.x - a.x
    dy = b.y - a.y
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return math.hypot(p.x - a.x, p.y - a.y)
    t = min(1.0, max(0.0, ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2))
    return math.hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy))


def build_arrangement(circles, segments=None, snap_points=None,
                      hull_points=None) -> Arrangement:
    return Arrangement(circles, segments, snap_points, hull_points)


def locate(arr: Arrangement, q: Point) -> int:
    return arr.locate(q)


def traverse_faces(arr: Arrangement, t=None):
    """Depth-first walk over the face-adjacency graph from the outer face,
    yielding (face, delta) where delta is the symmetric difference of the
    invalidated-triangle sets across the crossed edge.

    Crossing a circle arc must change the set by exactly that circle.
    """
    adj: dict[int, list[tuple[int, int]]] = {f.id: [] for f in arr.faces}
    for f1, f2, hid in arr.face_adjacencies():
        if f1 == f2:
            continue
        adj[f1].append((f2, hid))
        adj[f2].append((f1, hid))
    seen = {arr.outer_face}
    stack = [(arr.outer_face, None)]
    while stack:
        fid, via = stack.pop()
        face = arr.faces[fid]
        if via is None:
            yield face, face.invalid
        else:
            parent, hid = via
            delta = face.invalid ^ arr.faces[parent].invalid
            h = arr.halfedges[hid]
            if h.kind == "arc" and not arr.segments:
                assert delta == frozenset((h.curve,)), \
                    f"crossing circle {h.curve}: delta {set(delta)}"
            yield face, delta
        for nfid, hid in sorted(adj[fid]):
            if nfid not in seen:
                seen.add(nfid)
                stack.append((nfid, (fid, hid)))


def stats(arr: Arrangement, t=None) -> ArrangementStats:
    v = len(arr.vertices)
    e = arr.edge_count()
    f = len(arr.faces)
    m = len(arr.circles)
    xs = [0] * m
    for (i, j) in arr.circle_pairs:
        xs[i] += 1
        xs[j] += 1
    X = len(arr.circle_pairs)
    u = sum(1 for vid in range(v) if arr.vertex_degree(vid) == 4)
    depths = [face.depth for face in arr.faces]
    e_dt = len(t.edges()) if t is not None else 0
    st = ArrangementStats(
        k=v + e + f, v=v, e=e, f=f,
        d=max(depths), d_bar=sum(depths) / len(depths),
        m=m, X=X, x=tuple(xs), u=u, e_dt=e_dt)
    assert st.k >= m + 2
    assert st.d <= m
    assert 2 * st.X == sum(st.x)
    return st


def max_depth_adjacent(arr: Arrangement, ci: int) -> int:
    """Deepest face adjacent to circle ci."""
    best = 0
    for (t_lo, t_hi, f_in, f_out) in arr.circle_arcs(ci):
        best = max(best, arr.faces[f_in].depth, arr.faces[f_out].depth)
    return best
