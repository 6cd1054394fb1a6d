"""Optimal placement with mandatory (non-crossing) constraint segments.

The arrangement gains the segments as curves, and a face's invalidated
triangles can no longer be read off disk membership: visibility across
constraints matters.  Each face's invalid set is therefore recomputed by
inserting the face sample into a from-scratch constrained triangulation and
diffing against the base triangulation.  Region and boundary searches are
then reused unchanged on the corrected faces.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .arrangement import Arrangement, build_arrangement
from .boundary import BoundaryDiagnostics, boundary_search
from .geom import Point, convex_hull, general_position_check, point_in_hull
from .pipeline import Diagnostics, NoPlacementError, PlacementResult
from .region import region_search
from .triangulation import (
    OutsideHullError,
    Triangulation,
    build_cdt,
    delaunay_circles,
    evaluate_insertion,
    min_angle,
    validate_constraints,
)


@dataclass(frozen=True)
class ConstrainedInstance:
    points: tuple[Point, ...]
    constraints: tuple[tuple[int, int], ...]

    def __post_init__(self):
        validate_constraints(list(self.points), list(self.constraints))


def constrained_invalid_set(inst: ConstrainedInstance, sample: Point,
                            base: Triangulation | None = None,
                            seed: int = 0) -> frozenset[int]:
    """Triangles of the base constrained triangulation that disappear when
    `sample` is inserted and the triangulation rebuilt from scratch."""
    points = list(inst.points)
    constraints = list(inst.constraints)
    if base is None:
        base = build_cdt(points, constraints, seed=seed)
    hull = convex_hull(points)
    if not point_in_hull(points, hull, sample):
        raise OutsideHullError(f"sample {sample} outside hull")
    rebuilt = build_cdt(points + [sample], constraints, seed=seed)
    surviving = {tuple(sorted(tri)) for tri in rebuilt.triangles}
    return frozenset(i for i, tri in enumerate(base.triangles)
                     if tuple(sorted(tri)) not in surviving)


def _face_sample(arr: Arrangement, face, points, hull):
    """An interior point of the face that is also strictly inside the hull."""
    if face.sample is not None and point_in_hull(points, hull, face.sample):
        return face.sample
    # faces straddling the hull boundary: scan along each boundary halfedge
    # for an offset sample that lands in the in-hull sliver
    for frac in (0.5, 0.25, 0.75, 0.1, 0.9, 0.04, 0.96):
        for cid in face.cycles:
            for hid in arr.cycles[cid]:
                p = arr._he_offset_sample(arr.halfedges[hid], frac)
                if not point_in_hull(points, hull, p):
                    continue
                try:
                    if arr.locate(p) == face.id:
                        return p
                except Exception:
                    continue
    return None


def build_constrained_arrangement(inst: ConstrainedInstance,
                                  t: Triangulation | None = None,
                                  seed: int = 0) -> tuple[Triangulation, Arrangement]:
    points = list(inst.points)
    if t is None:
        t = build_cdt(points, list(inst.constraints), seed=seed)
    hull = convex_hull(points)
    circles = delaunay_circles(t)
    segs = [(points[i], points[j]) for (i, j) in inst.constraints]
    arr = build_arrangement(circles, segments=segs, snap_points=points,
                            hull_points=[points[i] for i in hull])
    base = t
    for face in arr.faces:
        if face.is_outer:
            face.invalid = frozenset()
            continue
        sample = _face_sample(arr, face, points, hull)
        if sample is None:
            face.invalid = frozenset()
            continue
        face.invalid = constrained_invalid_set(inst, sample, base, seed=seed)
        face.depth = len(face.invalid)
    return t, arr


def state_changes(arr: Arrangement) -> int:
    """Total invalid-set churn along circle boundaries: for each circle and
    each side, the sizes of the symmetric differences between the invalid
    sets of consecutive arcs' faces."""
    total = 0
    for ci in range(len(arr.circles)):
        arcs = arr.circle_arcs(ci)
        if len(arcs) < 2:
            continue
        for side in (0, 1):
            faces = [arr.faces[a[2 + side]].invalid for a in arcs]
            for i in range(len(faces)):
                total += len(faces[i] ^ faces[(i + 1) % len(faces)])
    return total


def constrained_boundary_search(inst: ConstrainedInstance, t, arr,
                                hull_indices=None,
                                diagnostics: BoundaryDiagnostics | None = None):
    points = list(inst.points)
    constraints = list(inst.constraints)

    def evaluate(p):
        return evaluate_insertion(points, constraints, p)

    # Constraint segments change invalid sets across them by any number of
    # triangles, so the single-crossing delta assertion does not apply.
    return boundary_search(t, arr, hull_indices, evaluate=evaluate,
                           diagnostics=diagnostics, check_deltas=False)


def _segment_distance(p: Point, a: Point, b: Point) -> float:
    vx, vy = b.x - a.x, b.y - a.y
    wx, wy = p.x - a.x, p.y - a.y
    L2 = vx * vx + vy * vy
    u = 0.0 if L2 == 0.0 else max(0.0, min(1.0, (wx * vx + wy * vy) / L2))
    return math.hypot(wx - u * vx, wy - u * vy)


def constrained_optimize(inst: ConstrainedInstance, seed: int = 0,
                         check_gp: bool = True) -> PlacementResult:
    points = list(inst.points)
    if check_gp:
        violations = general_position_check(points)
        if violations:
            raise ValueError("degenerate input: "
                             + ", ".join(str(v) for v in violations[:5]))
    hull = convex_hull(points)
    diag = Diagnostics()

    t0 = time.perf_counter()
    t, arr = build_constrained_arrangement(inst, seed=seed)
    diag.arrangement_time = time.perf_counter() - t0
    diag.m = len(arr.circles)
    diag.faces = len(arr.faces)
    diag.d = max((f.depth for f in arr.faces), default=0)
    diag.k = len(arr.vertices) + arr.edge_count() + len(arr.faces)

    t0 = time.perf_counter()
    cell = region_search(t, arr, hull)
    diag.region_time = time.perf_counter() - t0

    t0 = time.perf_counter()
    bdiag = BoundaryDiagnostics()
    cand = constrained_boundary_search(inst, t, arr, hull, diagnostics=bdiag)
    diag.boundary_time = time.perf_counter() - t0
    diag.verifications = bdiag.verifications

    best = None
    if cell is not None:
        value = evaluate_insertion(points, list(inst.constraints), cell.point,
                                   seed=seed)
        best = PlacementResult(cell.point, value, "cell-interior", cell.face,
                               None, min_angle(t), diag)
    if cand is not None and (best is None or cand.value > best.value):
        value = evaluate_insertion(points, list(inst.constraints), cand.point,
                                   seed=seed)
        best = PlacementResult(cand.point, value, "circle-boundary",
                               cand.circle_index, cand.theta, min_angle(t), diag)
    if best is None:
        raise NoPlacementError("no admissible placement found")
    scale = max(max(abs(p.x), abs(p.y)) for p in points) + 1.0
    for (i, j) in inst.constraints:
        if _segment_distance(best.point, points[i], points[j]) <= 1e-9 * scale:
            diag.warnings.append(
                f"best point lies within tolerance of constraint ({i}, {j}); "
                "placement on constraint segments is rejected")
    return best
