"""End-to-end unconstrained placement: triangulate, build the circle
arrangement, run the interior (per-face) and boundary (per-circle) searches,
and return the verified best."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .arrangement import build_arrangement, stats
from .boundary import BoundaryDiagnostics, boundary_search
from .geom import Point, convex_hull, general_position_check
from .region import region_search
from .triangulation import build_delaunay, delaunay_circles, evaluate_insertion, min_angle


@dataclass
class Diagnostics:
    k: int = 0
    d: int = 0
    m: int = 0
    faces: int = 0
    region_time: float = 0.0
    boundary_time: float = 0.0
    arrangement_time: float = 0.0
    verifications: int = 0
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class PlacementResult:
    point: Point
    value: float                 # verified: full rebuild with point included
    provenance: str              # "cell-interior" | "circle-boundary"
    provenance_id: int           # face id or circle id
    theta: float | None          # boundary candidates only
    baseline: float              # min angle of the input triangulation
    diagnostics: Diagnostics


class NoPlacementError(RuntimeError):
    """No admissible insertion point was found inside the hull."""


def optimize(points: list[Point], seed: int = 0, check_gp: bool = True,
             check_deltas: bool = True) -> PlacementResult:
    if check_gp:
        violations = general_position_check(points)
        if violations:
            raise ValueError("degenerate input: "
                             + ", ".join(str(v) for v in violations[:5]))
    t = build_delaunay(points, seed=seed)
    hull = convex_hull(points)
    diag = Diagnostics()

    t0 = time.perf_counter()
    circles = delaunay_circles(t)
    arr = build_arrangement(circles, snap_points=points,
                            hull_points=[points[i] for i in hull])
    diag.arrangement_time = time.perf_counter() - t0
    st = stats(arr, t)
    diag.k, diag.d, diag.m, diag.faces = st.k, st.d, st.m, st.f

    t0 = time.perf_counter()
    cell = region_search(t, arr, hull)
    diag.region_time = time.perf_counter() - t0

    t0 = time.perf_counter()
    bdiag = BoundaryDiagnostics()
    cand = boundary_search(t, arr, hull, diagnostics=bdiag,
                           check_deltas=check_deltas)
    diag.boundary_time = time.perf_counter() - t0
    diag.verifications = bdiag.verifications

    best = None
    if cell is not None:
        value = evaluate_insertion(points, [], cell.point, seed=seed)
        best = PlacementResult(cell.point, value, "cell-interior", cell.face,
                               None, min_angle(t), diag)
    if cand is not None and (best is None or cand.value > best.value):
        value = evaluate_insertion(points, [], cand.point, seed=seed)
        best = PlacementResult(cand.point, value, "circle-boundary",
                               cand.circle_index, cand.theta, min_angle(t), diag)
    if best is None:
        raise NoPlacementError("no admissible placement found")
    return best
