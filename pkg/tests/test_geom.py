import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maxangle.geom import (
    DegeneracyError,
    NEGATIVE,
    POSITIVE,
    ZERO,
    Circle,
    Point,
    angle_at,
    circle_intersections,
    circumcircle,
    convex_hull,
    general_position_check,
    in_disk,
    orient,
    point_in_hull,
)

coords = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False,
                   allow_infinity=False)


def pts(*xy):
    return [Point(x, y) for x, y in xy]


class TestOrient:
    def test_basic_signs(self):
        a, b, c = pts((0, 0), (1, 0), (0, 1))
        assert orient(a, b, c) == POSITIVE
        assert orient(a, c, b) == NEGATIVE
        assert orient(a, b, Point(2, 0)) == ZERO

    def test_near_degenerate_exact(self):
        # the filter must hand these to the exact path, not guess
        a = Point(0.1, 0.1)
        b = Point(0.3, 0.3)
        c = Point(0.5, 0.5000000000000001)
        ax, ay, bx, by, cx, cy = (Fraction(v) for v in
                                  (a.x, a.y, b.x, b.y, c.x, c.y))
        det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
        expected = POSITIVE if det > 0 else NEGATIVE if det < 0 else ZERO
        assert orient(a, b, c) == expected

    @given(st.tuples(coords, coords), st.tuples(coords, coords),
           st.tuples(coords, coords))
    @settings(max_examples=100, deadline=None)
    def test_antisymmetry_and_rotation(self, ta, tb, tc):
        a, b, c = Point(*ta), Point(*tb), Point(*tc)
        s = orient(a, b, c)
        assert orient(b, c, a) == s
        assert orient(c, a, b) == s
        assert orient(b, a, c) == -s


class TestInDisk:
    def test_unit_circle(self):
        a, b, c = pts((1, 0), (0, 1), (-1, 0))
        assert in_disk(a, b, c, Point(0, 0)) == POSITIVE
        assert in_disk(a, b, c, Point(2, 2)) == NEGATIVE
        assert in_disk(a, b, c, Point(0, -1)) == ZERO

    def test_requires_ccw(self):
        a, b, c = pts((1, 0), (0, 1), (-1, 0))
        with pytest.raises(ValueError):
            in_disk(a, c, b, Point(0, 0))

    @given(st.tuples(coords, coords), st.tuples(coords, coords),
           st.tuples(coords, coords), st.tuples(coords, coords))
    @settings(max_examples=100, deadline=None)
    def test_against_circumcircle_distance(self, ta, tb, tc, td):
        a, b, c, d = (Point(*t) for t in (ta, tb, tc, td))
        s = orient(a, b, c)
        if s == ZERO:
            return
        if s == NEGATIVE:
            b, c = c, b
        area2 = abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))
        if area2 < 1e-9:
            return  # circumcircle construction is not meaningful here
        side = in_disk(a, b, c, d)
        circ = circumcircle(a, b, c)
        dist = math.hypot(d.x - circ.center.x, d.y - circ.center.y)
        margin = 1e-6 * circ.radius
        if dist < circ.radius - margin:
            assert side == POSITIVE
        elif dist > circ.radius + margin:
            assert side == NEGATIVE


class TestConstructions:
    def test_circumcircle_equidistant(self):
        rng = random.Random(3)
        for _ in range(100):
            a, b, c = (Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
                       for _ in range(3))
            if orient(a, b, c) == ZERO:
                continue
            circ = circumcircle(a, b, c)
            for p in (a, b, c):
                d = math.hypot(p.x - circ.center.x, p.y - circ.center.y)
                assert d == pytest.approx(circ.radius, rel=1e-9)

    def test_circumcircle_collinear_raises(self):
        with pytest.raises(DegeneracyError):
            circumcircle(Point(0, 0), Point(1, 1), Point(2, 2))

    def test_angle_sum(self):
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
                       for _ in range(3))
            if orient(a, b, c) == ZERO:
                continue
            total = angle_at(a, b, c) + angle_at(b, c, a) + angle_at(c, a, b)
            assert total == pytest.approx(math.pi, abs=1e-9)

    def test_equilateral_angles(self):
        a, b, c = pts((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
        assert angle_at(a, b, c) == pytest.approx(math.pi / 3, abs=1e-12)

    def test_circle_intersections(self):
        c1 = Circle(Point(0, 0), 1.0)
        c2 = Circle(Point(1, 0), 1.0)
        got = circle_intersections(c1, c2)
        assert len(got) == 2
        for p in got:
            assert math.hypot(p.x, p.y) == pytest.approx(1.0, abs=1e-12)
            assert math.hypot(p.x - 1, p.y) == pytest.approx(1.0, abs=1e-12)
        assert circle_intersections(c1, Circle(Point(5, 0), 1.0)) == []
        assert circle_intersections(c1, Circle(Point(0, 0), 2.0)) == []
        with pytest.raises(DegeneracyError):
            circle_intersections(c1, Circle(Point(0, 0), 1.0))


class TestGeneralPosition:
    def test_clean_instance(self):
        p = pts((0, 0), (3, 0.2), (1.3, 2.7), (0.4, 1.9))
        assert general_position_check(p) == []

    def test_collinear_reported(self):
        p = pts((0, 0), (1, 0), (2, 0), (0.5, 1.2))
        kinds = {v.kind for v in general_position_check(p)}
        assert "collinear" in kinds

    def test_cocircular_reported(self):
        p = pts((1, 0), (0, 1), (-1, 0), (0, -1))
        kinds = {v.kind for v in general_position_check(p)}
        assert "cocircular" in kinds

    def test_strong_mode_runs(self):
        rng = random.Random(11)
        p = [Point(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(8)]
        assert general_position_check(p, mode="strong") == []


class TestHull:
    def test_square_hull(self):
        p = pts((0, 0), (2, 0), (2, 2), (0, 2), (1, 1))
        hull = convex_hull(p)
        assert sorted(hull) == [0, 1, 2, 3]
        assert point_in_hull(p, hull, Point(1.0, 0.5))
        assert not point_in_hull(p, hull, Point(3.0, 0.5))
        assert not point_in_hull(p, hull, Point(1.0, 0.0))  # on boundary

    @given(st.lists(st.tuples(coords, coords), min_size=3, max_size=15))
    @settings(max_examples=60, deadline=None)
    def test_hull_contains_all_points(self, raw):
        p = [Point(x, y) for x, y in raw]
        hull = convex_hull(p)
        if len(hull) < 3:
            return
        m = len(hull)
        for q in p:
            for i in range(m):
                a, b = p[hull[i]], p[hull[(i + 1) % m]]
                assert orient(a, b, q) >= 0
