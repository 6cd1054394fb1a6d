"""Placement search on arrangement circle boundaries.

Along an arc of an arrangement circle, the hole carved by a nearby insertion
point is fixed, so the fan angles are univariate functions of the angle
parameter.  Each side of each circle gets a set of partial angle functions;
their lower envelope is computed by divide-and-conquer and its maxima become
placement candidates, verified by nudging slightly into each incident face
and re-running the insertion evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geom import EPS_ANGLE, Circle, Point, point_in_hull
from .region import Hole, HoleStructureError, hole_for
from .triangulation import OutsideHullError, Triangulation, evaluate_insertion

TWO_PI = 2.0 * math.pi

# Radial nudge used to resolve the cocircular degeneracy when verifying a
# candidate that lies exactly on a circle, relative to the circle radius.
EPS_NUDGE = 1e-9

KINDS = ("apex", "base_q", "base_r")


class FunctionSetError(AssertionError):
    """Live-function bookkeeping changed inconsistently across a vertex."""


@dataclass(frozen=True)
class AngleFunction:
    circle_index: int
    side: str                   # "in" | "out"
    kind: str                   # "apex" | "base_q" | "base_r"
    q_index: int
    r_index: int
    q: Point
    r: Point
    circle: Circle
    domains: tuple[tuple[float, float], ...]   # theta intervals in [0, 2pi]

    @property
    def identity(self):
        return (self.q_index, self.r_index, self.kind)

    def defined_at(self, theta: float, tol: float = 1e-12) -> bool:
        theta %= TWO_PI
        return any(lo - tol <= theta <= hi + tol for lo, hi in self.domains)

    def __call__(self, theta: float) -> float:
        return float(self.evaluate(np.asarray([theta]))[0])

    def evaluate(self, thetas: np.ndarray) -> np.ndarray:
        c = self.circle
        px = c.center.x + c.radius * np.cos(thetas)
        py = c.center.y + c.radius * np.sin(thetas)
        if self.kind == "apex":
            return _angles(px, py, self.q.x, self.q.y, self.r.x, self.r.y)
        if self.kind == "base_q":
            return _angles(self.q.x, self.q.y, px, py, self.r.x, self.r.y)
        return _angles(self.r.x, self.r.y, px, py, self.q.x, self.q.y)


def _angles(ax, ay, bx, by, cx, cy):
    """Angle at (ax, ay) between rays to (bx, by) and (cx, cy), vectorized."""
    ab2 = (bx - ax) ** 2 + (by - ay) ** 2
    ac2 = (cx - ax) ** 2 + (cy - ay) ** 2
    bc2 = (cx - bx) ** 2 + (cy - by) ** 2
    denom = 2.0 * np.sqrt(ab2 * ac2)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos = np.where(denom > 0.0, (ab2 + ac2 - bc2) / np.maximum(denom, 1e-300), 1.0)
    return np.arccos(np.clip(cos, -1.0, 1.0))


@dataclass(frozen=True)
class Crossings:
    thetas: tuple[float, ...]
    identical: bool = False
    tangency_suspects: tuple[float, ...] = ()


@dataclass
class Envelope:
    circle_index: int
    # pieces: (theta_lo, theta_hi, function); minimal over the piece
    pieces: list[tuple[float, float, AngleFunction]] = field(default_factory=list)

    @property
    def breakpoints(self) -> list[float]:
        out = []
        for lo, hi, _ in self.pieces:
            if not out or abs(out[-1] - lo) > 1e-12:
                out.append(lo)
            out.append(hi)
        return out

    def value(self, theta: float) -> float:
        theta %= TWO_PI
        for lo, hi, f in self.pieces:
            if lo - 1e-12 <= theta <= hi + 1e-12:
                return f(theta)
        return math.inf


@dataclass(frozen=True)
class BoundaryCandidate:
    circle_index: int
    theta: float
    point: Point
    value: float                # verified by nudged reinsertion
    envelope_value: float
    faces: tuple[int, int]      # (inside face, outside face) at theta


def _split_wrap(lo: float, hi: float):
    """Normalize an arc interval into pieces inside [0, 2pi]."""
    lo %= TWO_PI
    if hi - lo >= TWO_PI - 1e-15:
        return [(0.0, TWO_PI)]
    hi = lo + ((hi - lo) % TWO_PI)
    if hi <= TWO_PI:
        return [(lo, hi)]
    return [(lo, TWO_PI), (0.0, hi - TWO_PI)]


def _merge_intervals(ivals, tol=1e-12):
    ivals = sorted(ivals)
    out = []
    for lo, hi in ivals:
        if out and lo <= out[-1][1] + tol:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    # a union covering the full circle wraps seamlessly
    return out


def functions_on_circle(ci: int, arr, t: Triangulation,
                        hole_cache: dict | None = None,
                        check_deltas: bool = True) -> list[AngleFunction]:
    """Partial angle functions on circle ci, both sides merged, with domains
    split at the arrangement vertices on the circle."""
    if hole_cache is None:
        hole_cache = {}
    circle = arr.circles[ci]
    arcs = arr.circle_arcs(ci)
    out: list[AngleFunction] = []
    for side in ("in", "out"):
        ivals: dict[tuple, list] = {}
        prev_ids = None
        prev_checkable = False
        prev_invalid = frozenset()
        for (t_lo, t_hi, f_in, f_out) in arcs:
            face = arr.faces[f_in if side == "in" else f_out]
            ids = set()
            checkable = False
            if not face.is_outer and face.invalid:
                hole = _hole(t, face.invalid, hole_cache)
                if hole is not None:
                    checkable = True
                    b = hole.boundary_indices
                    m = len(b)
                    for e in range(m):
                        qi, ri = b[e], b[(e + 1) % m]
                        for kind in KINDS:
                            ids.add((qi, ri, kind))
            if check_deltas and prev_checkable and checkable:
                _check_delta(arr, ci, t_lo, prev_ids, ids,
                             prev_invalid ^ face.invalid)
            for ident in ids:
                ivals.setdefault(ident, []).extend(_split_wrap(t_lo, t_hi))
            prev_ids, prev_checkable = ids, checkable
            prev_invalid = face.invalid
        for (qi, ri, kind), dom in ivals.items():
            out.append(AngleFunction(
                ci, side, kind, qi, ri, t.vertices[qi], t.vertices[ri],
                circle, tuple(_merge_intervals(dom))))
    return out


def _hole(t, invalid, cache) -> Hole | None:
    if invalid in cache:
        return cache[invalid]
    try:
        hole = hole_for(t, invalid)
    except HoleStructureError:
        hole = None
    cache[invalid] = hole
    return hole


def _check_delta(arr, ci, theta, prev_ids, ids, invalid_delta=None):
    """Passing one simple two-circle crossing swaps one hole triangle, so one
    side gains 3 functions and loses 6 or the reverse.

    Vertices where two crossings nearly coincide (the invalidated sets of
    the neighboring faces differ by more than one triangle) are skipped;
    basic and strong general position do not rule those out.
    """
    if invalid_delta is not None and len(invalid_delta) > 1:
        return
    vid = _vertex_at(arr, ci, theta)
    if vid is None:
        return
    on = sum(1 for lst in arr._on_circle if any(v == vid for _, v in lst))
    if on != 2 or arr.vertex_degree(vid) != 4:
        return
    p = arr.vertices[vid]
    if any(math.hypot(p.x - s.x, p.y - s.y) <= arr.tol for s in arr.snap_points):
        return
    gained = len(ids - prev_ids)
    lost = len(prev_ids - ids)
    if (gained, lost) not in ((3, 6), (6, 3), (0, 0)):
        raise FunctionSetError(
            f"circle {ci} at theta {theta}: gained {gained}, lost {lost}")


def _vertex_at(arr, ci, theta):
    for th, vid in arr._on_circle[ci]:
        if abs(th - theta) <= 1e-9 or abs(abs(th - theta) - TWO_PI) <= 1e-9:
            return vid
    return None


def crossings(f: AngleFunction, g: AngleFunction, samples: int = 64,
              lo: float | None = None, hi: float | None = None) -> Crossings:
    """Roots of f - g on the common domain, each isolated to width 1e-12.

    Starts from a uniform sample, bisects across sign changes, and reports
    near-zero local minima without a sign change as tangency suspects.
    """
    if lo is None or hi is None:
        common = _common_domain(f, g)
    else:
        common = [(lo, hi)]
    roots: list[float] = []
    suspects: list[float] = []
    identical = bool(common)
    for (a, b) in common:
        if b - a < 1e-12:
            continue
        # near-singular functions (a fan vertex close to this circle) can
        # cross zero twice within a coarse step, so long intervals get a
        # proportionally denser sample
        n = max(samples, 8, int((b - a) / TWO_PI * 512))
        ts = np.linspace(a, b, n + 1)
        diff = f.evaluate(ts) - g.evaluate(ts)
        if np.max(np.abs(diff)) <= EPS_ANGLE:
            # the functions coincide on this interval (distinct fan edges
            # can agree exactly via inscribed angles); sign noise inside a
            # coincident stretch is not a set of isolated crossings
            continue
        identical = False
        for i in range(n):
            d0, d1 = diff[i], diff[i + 1]
            if max(abs(d0), abs(d1)) <= EPS_ANGLE:
                continue   # inside a coincident stretch
            if d0 == 0.0:
                roots.append(float(ts[i]))
            elif d0 * d1 < 0.0:
                roots.append(_bisect(f, g, float(ts[i]), float(ts[i + 1])))
            elif 0 < i < n and abs(d0) < 1e-7 and \
                    abs(diff[i - 1]) >= abs(d0) <= abs(d1):
                # local minimum of |f - g| near zero: possible tangency
                r = _refine_tangency(f, g, float(ts[i - 1]), float(ts[i + 1]))
                if r is not None:
                    suspects.append(r)
        if diff[n] == 0.0:
            roots.append(float(ts[n]))
    roots = _dedupe(sorted(roots))
    return Crossings(tuple(roots), identical, tuple(_dedupe(sorted(suspects))))


def _common_domain(f: AngleFunction, g: AngleFunction):
    out = []
    for (a1, b1) in f.domains:
        for (a2, b2) in g.domains:
            lo, hi = max(a1, a2), min(b1, b2)
            if hi > lo:
                out.append((lo, hi))
    return _merge_intervals(out)


def _bisect(f, g, a, b, width: float = 1e-12) -> float:
    da = f(a) - g(a)
    while b - a > width:
        m = 0.5 * (a + b)
        dm = f(m) - g(m)
        if dm == 0.0:
            return m
        if da * dm < 0.0:
            b = m
        else:
            a, da = m, dm
    return 0.5 * (a + b)


def _refine_tangency(f, g, a, b):
    ts = np.linspace(a, b, 65)
    diff = np.abs(f.evaluate(ts) - g.evaluate(ts))
    i = int(np.argmin(diff))
    if diff[i] < 1e-9:
        return float(ts[i])
    return None


def _dedupe(sorted_vals, tol=1e-10):
    out = []
    for v in sorted_vals:
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


def lower_envelope(functions: list[AngleFunction],
                   circle_index: int | None = None) -> Envelope:
    """Pointwise minimum of partial functions on one circle, by
    divide-and-conquer: recurse on halves, merge the two sub-envelopes with
    a synchronized sweep split at their breakpoints and mutual crossings."""
    if circle_index is None:
        circle_index = functions[0].circle_index if functions else -1
    if not functions:
        return Envelope(circle_index)
    if len(functions) == 1:
        f = functions[0]
        return Envelope(circle_index, [(lo, hi, f) for lo, hi in f.domains])
    mid = len(functions) // 2
    e1 = lower_envelope(functions[:mid], circle_index)
    e2 = lower_envelope(functions[mid:], circle_index)
    return _merge_envelopes(e1, e2)


def _merge_envelopes(e1: Envelope, e2: Envelope) -> Envelope:
    cuts = set()
    for lo, hi, _ in e1.pieces + e2.pieces:
        cuts.add(lo)
        cuts.add(hi)
    elementary = _elementary(sorted(cuts))
    # refine each elementary interval by the crossings of the two active pieces
    refined = []
    for (a, b) in elementary:
        f1 = _active(e1, a, b)
        f2 = _active(e2, a, b)
        if f1 is None or f2 is None or f1.identity == f2.identity:
            refined.append((a, b))
            continue
        inner = [th for th in crossings(f1, f2, lo=a, hi=b).thetas
                 if a + 1e-12 < th < b - 1e-12]
        pts = [a] + inner + [b]
        refined.extend(zip(pts[:-1], pts[1:]))
    out = Envelope(e1.circle_index)
    for (a, b) in refined:
        f1 = _active(e1, a, b)
        f2 = _active(e2, a, b)
        if f1 is None and f2 is None:
            continue
        if f1 is None:
            f = f2
        elif f2 is None:
            f = f1
        else:
            m = 0.5 * (a + b)
            f = f1 if f1(m) <= f2(m) else f2
        if out.pieces and out.pieces[-1][2] is f and \
                abs(out.pieces[-1][1] - a) <= 1e-12:
            lo_prev = out.pieces[-1][0]
            out.pieces[-1] = (lo_prev, b, f)
        else:
            out.pieces.append((a, b, f))
    return out


def _elementary(cuts):
    return [(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1)
            if cuts[i + 1] - cuts[i] > 1e-13]


def _active(e: Envelope, a: float, b: float):
    m = 0.5 * (a + b)
    for lo, hi, f in e.pieces:
        if lo - 1e-12 <= m <= hi + 1e-12:
            return f
    return None


def envelope_maxima(env: Envelope, max_spacing: float = 0.02, cuts=()):
    """(theta, value) local maxima of the envelope, one per piece, found by
    dense sampling plus golden-section refinement to width 1e-12.

    Extra `cuts` (arc boundaries) further split the pieces so each maximum
    stays within a single arc, where the surviving-angle cap is constant.
    """
    out = []
    pieces = env.pieces
    if cuts:
        pieces = []
        for (lo, hi, f) in env.pieces:
            inner = sorted(c for c in cuts if lo + 1e-12 < c < hi - 1e-12)
            pts = [lo] + inner + [hi]
            pieces.extend((a, b, f) for a, b in zip(pts[:-1], pts[1:]))
    for (lo, hi, f) in pieces:
        if hi - lo <= 1e-12:
            continue
        n = max(8, int(math.ceil((hi - lo) / min(max_spacing, (hi - lo) / 64))))
        ts = np.linspace(lo, hi, n + 1)
        vals = f.evaluate(ts)
        i = int(np.argmax(vals))
        a = float(ts[max(0, i - 1)])
        b = float(ts[min(n, i + 1)])
        theta = _golden_max(f, a, b)
        out.append((theta, f(theta)))
    return out


def _golden_max(f, a, b, width=1e-12):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


@dataclass
class BoundaryDiagnostics:
    function_counts: dict = field(default_factory=dict)   # ci -> max per side
    envelope_pieces: dict = field(default_factory=dict)   # (ci, side) -> count
    maxima_counts: dict = field(default_factory=dict)     # ci -> u_i
    verifications: int = 0


def boundary_search(t: Triangulation, arr, hull_indices=None,
                    evaluate=None, diagnostics: BoundaryDiagnostics | None = None,
                    check_deltas: bool = True):
    """Best placement on any circle of the arrangement, or None.

    Each envelope maximum is an upper bound on the achievable value at its
    angle (the surviving-triangle minimum caps it further); candidates are
    verified best-first with nudged reinsertions until the best verified
    value dominates every remaining bound.
    """
    points = list(t.vertices)
    if hull_indices is None:
        from .geom import convex_hull
        hull_indices = convex_hull(points)
    if evaluate is None:
        def evaluate(p):
            return evaluate_insertion(points, [], p)
    per_tri = [min(t.triangle_angles(i)) for i in range(len(t.triangles))]
    rest_of: dict[int, float] = {}
    for face in arr.faces:
        rest_of[face.id] = min(
            (per_tri[i] for i in range(len(per_tri)) if i not in face.invalid),
            default=math.inf)
    hole_cache: dict = {}
    # (bound, ci, theta, envelope value, faces)
    queue = []
    for ci in range(len(arr.circles)):
        funcs = functions_on_circle(ci, arr, t, hole_cache, check_deltas)
        if diagnostics is not None:
            counts = {"in": 0, "out": 0}
            for f in funcs:
                counts[f.side] += 1
            diagnostics.function_counts[ci] = max(counts.values())
        n_max = 0
        arc_cuts = []
        for (t_lo, t_hi, _, _) in arr.circle_arcs(ci):
            arc_cuts.append(t_lo % TWO_PI)
            arc_cuts.append(t_hi % TWO_PI)
        for side in ("in", "out"):
            fs = [f for f in funcs if f.side == side]
            if not fs:
                continue
            env = lower_envelope(fs, ci)
            if diagnostics is not None:
                diagnostics.envelope_pieces[(ci, side)] = len(env.pieces)
            for theta, val in envelope_maxima(env, cuts=arc_cuts):
                faces = _faces_at(arr, ci, theta)
                if faces is None:
                    continue
                side_face = faces[0] if side == "in" else faces[1]
                bound = min(val, rest_of.get(side_face, math.inf))
                queue.append((bound, ci, theta, val, faces))
                n_max += 1
        if diagnostics is not None:
            diagnostics.maxima_counts[ci] = n_max
    queue.sort(key=lambda r: (-r[0], r[1], r[2]))
    best: BoundaryCandidate | None = None
    for idx, (bound, ci, theta, val, faces) in enumerate(queue):
        if best is not None and best.value >= bound - EPS_ANGLE:
            break
        c = arr.circles[ci]
        verified = -math.inf
        vpoint = None
        for sgn in (-1.0, 1.0):
            r = c.radius * (1.0 + sgn * EPS_NUDGE)
            p = Point(c.center.x + r * math.cos(theta),
                      c.center.y + r * math.sin(theta))
            if not point_in_hull(points, hull_indices, p):
                continue
            try:
                got = evaluate(p)
            except (OutsideHullError, ValueError):
                continue
            if got > verified:
                verified, vpoint = got, p
        if diagnostics is not None:
            diagnostics.verifications += 1
        if vpoint is None:
            continue
        cand = BoundaryCandidate(ci, theta, vpoint, verified, val, faces)
        if best is None or cand.value > best.value + 1e-15:
            best = cand
    return best


def _faces_at(arr, ci, theta):
    theta %= TWO_PI
    for (t_lo, t_hi, f_in, f_out) in arr.circle_arcs(ci):
        rel = (theta - t_lo) % TWO_PI
        if rel <= (t_hi - t_lo) + 1e-12:
            return (f_in, f_out)
    return None
