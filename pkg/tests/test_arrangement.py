import math
import random

import pytest

from maxangle.arrangement import (
    build_arrangement,
    max_depth_adjacent,
    stats,
    traverse_faces,
)
from maxangle.geom import Circle, DegeneracyError, Point
from maxangle.instances import random_instance
from maxangle.triangulation import build_delaunay, delaunay_circles


def unit(x, y, r=1.0):
    return Circle(Point(x, y), r)


class TestCanonicalCounts:
    def test_single_circle(self):
        st = stats(build_arrangement([unit(0, 0)]))
        assert (st.v, st.e, st.f) == (0, 1, 2)
        assert st.k == 3
        assert st.d == 1
        assert st.X == 0

    def test_two_crossing_circles(self):
        st = stats(build_arrangement([unit(0, 0), unit(1, 0)]))
        assert (st.v, st.e, st.f) == (2, 4, 4)
        assert st.k == 10
        assert st.d == 2
        assert st.X == 1
        assert st.x == (1, 1)
        assert st.u == 2

    def test_two_disjoint_circles(self):
        st = stats(build_arrangement([unit(0, 0), unit(5, 0)]))
        assert (st.v, st.e, st.f) == (0, 2, 3)
        assert st.k == 5
        assert st.d == 1

    def test_nested_circles(self):
        st = stats(build_arrangement([unit(0, 0, 3.0), unit(0.2, 0, 1.0)]))
        assert (st.v, st.e, st.f) == (0, 2, 3)
        assert st.d == 2

    def test_three_symmetric_circles(self):
        c = [unit(0, 0), unit(1, 0), unit(0.5, math.sqrt(3) / 2)]
        st = stats(build_arrangement(c))
        assert (st.v, st.e, st.f) == (6, 12, 8)
        assert st.d == 3
        assert st.X == 3

    def test_duplicate_circles_rejected(self):
        with pytest.raises(DegeneracyError):
            build_arrangement([unit(0, 0), unit(0, 0)])


class TestInvariants:
    @pytest.mark.parametrize("seed", range(10))
    def test_euler_and_depth(self, seed):
        pts = random_instance(6 + seed % 5, seed=400 + seed)
        t = build_delaunay(pts)
        arr = build_arrangement(delaunay_circles(t), snap_points=pts)
        st = stats(arr, t)
        # v - e + f = 1 + components - vertex-free loops, with components
        # recomputed here by union-find over the crossing pairs
        parent = list(range(st.m))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (i, j) in arr.circle_pairs:
            parent[find(i)] = find(j)
        components = len({find(i) for i in range(st.m)})
        loops = sum(1 for ci in range(st.m) if st.x[ci] == 0)
        assert st.v - st.e + st.f == 1 + components - loops
        assert st.d <= st.m
        assert 2 * st.X == sum(st.x)
        for ci in range(st.m):
            assert max_depth_adjacent(arr, ci) <= st.d

    @pytest.mark.parametrize("seed", range(8))
    def test_depth_matches_disk_membership(self, seed):
        pts = random_instance(7, seed=500 + seed)
        t = build_delaunay(pts)
        circles = delaunay_circles(t)
        arr = build_arrangement(circles, snap_points=pts)
        for face in arr.faces:
            if face.sample is None:
                continue
            depth = sum(
                1 for c in circles
                if math.hypot(face.sample.x - c.center.x,
                              face.sample.y - c.center.y) < c.radius)
            assert face.depth == depth

    @pytest.mark.parametrize("seed", range(8))
    def test_locate_agrees_with_membership(self, seed):
        pts = random_instance(8, seed=600 + seed)
        t = build_delaunay(pts)
        circles = delaunay_circles(t)
        arr = build_arrangement(circles, snap_points=pts)
        rng = random.Random(seed)
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        hits = 0
        for _ in range(60):
            q = Point(rng.uniform(min(xs), max(xs)),
                      rng.uniform(min(ys), max(ys)))
            if arr.on_any_curve(q):
                continue
            face = arr.faces[arr.locate(q)]
            inside = frozenset(
                i for i, c in enumerate(circles)
                if math.hypot(q.x - c.center.x, q.y - c.center.y) < c.radius)
            want = frozenset(i for i, c in enumerate(circles)
                             if not face.is_outer) and inside
            assert face.depth == len(inside)
            hits += 1
        assert hits > 30

    @pytest.mark.parametrize("seed", range(6))
    def test_traversal_deltas_single_circle(self, seed):
        pts = random_instance(7, seed=700 + seed)
        t = build_delaunay(pts)
        arr = build_arrangement(delaunay_circles(t), snap_points=pts)
        # traverse_faces itself asserts that each arc crossing changes
        # the invalid set by exactly one circle
        faces = [f for f, _ in traverse_faces(arr, t)]
        assert len(faces) == len(arr.faces)

    def test_invalid_sets_match_circumdisk_membership(self):
        pts = random_instance(9, seed=77)
        t = build_delaunay(pts)
        circles = delaunay_circles(t)
        arr = build_arrangement(circles, snap_points=pts)
        for face in arr.faces:
            if face.sample is None or face.is_outer:
                continue
            want = frozenset(
                i for i, c in enumerate(circles)
                if math.hypot(face.sample.x - c.center.x,
                              face.sample.y - c.center.y) < c.radius)
            assert face.invalid == want


class TestSegments:
    def test_circle_and_crossing_segment(self):
        arr = build_arrangement([unit(0, 0)],
                                segments=[(Point(-2, 0), Point(2, 0))])
        st = stats(arr)
        # circle split in 2 arcs + segment split in 3 pieces: v=4 (2 circle
        # hits + 2 endpoints), e=5, and 3 faces (two half-disks + outer)
        assert st.v == 4
        assert st.e == 5
        assert st.f == 3

    def test_segment_outside_circle(self):
        arr = build_arrangement([unit(0, 0)],
                                segments=[(Point(2, -1), Point(2, 1))])
        st = stats(arr)
        # dangling segment: two endpoint vertices, one segment edge plus the
        # vertex-free circle loop, and no extra face
        assert st.v == 2
        assert st.e == 2
        assert st.f == 2


class TestArcs:
    @pytest.mark.parametrize("seed", range(5))
    def test_circle_arcs_cover_circle(self, seed):
        pts = random_instance(8, seed=800 + seed)
        t = build_delaunay(pts)
        arr = build_arrangement(delaunay_circles(t), snap_points=pts)
        for ci in range(len(arr.circles)):
            arcs = arr.circle_arcs(ci)
            total = 0.0
            for (lo, hi, f_in, f_out) in arcs:
                span = hi - lo
                if span < 0:
                    span += 2.0 * math.pi
                total += span
                assert 0 <= f_in < len(arr.faces)
                assert 0 <= f_out < len(arr.faces)
            assert total == pytest.approx(2.0 * math.pi, abs=1e-9)
