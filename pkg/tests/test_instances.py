import math

import pytest

from maxangle.arrangement import build_arrangement, stats
from maxangle.geom import general_position_check
from maxangle.instances import (
    clipped_circle_family,
    perturbed_grid,
    random_instance,
)
from maxangle.triangulation import build_delaunay, delaunay_circles


class TestRandomInstance:
    def test_deterministic(self):
        a = random_instance(10, seed=4)
        b = random_instance(10, seed=4)
        assert a == b
        assert a != random_instance(10, seed=5)

    def test_general_position_modes(self):
        for seed in range(5):
            pts = random_instance(9, seed=seed, gp="strong")
            assert general_position_check(pts, mode="strong") == []


class TestPerturbedGrid:
    def test_shape_and_bounds(self):
        pts = perturbed_grid(6)
        assert len(pts) == 36
        for p in pts:
            assert -0.1 <= p.x <= 5.1
            assert -0.1 <= p.y <= 5.2

    def test_general_position(self):
        pts = perturbed_grid(8)
        assert general_position_check(pts) == []

    @pytest.mark.parametrize("side", (6, 8))
    def test_depth_grows_with_side(self, side):
        pts = perturbed_grid(side)
        t = build_delaunay(pts)
        arr = build_arrangement(delaunay_circles(t), snap_points=pts)
        st = stats(arr, t)
        assert st.d >= side - 3

    def test_bad_parameters_rejected(self):
        with pytest.raises(ValueError):
            perturbed_grid(2)
        with pytest.raises(ValueError):
            perturbed_grid(6, epsilon=0.5)


class TestClippedCircleFamily:
    def test_structure(self):
        inst = clipped_circle_family(12)
        assert len(inst.points) == 12
        assert len(inst.constraints) == 4
        ring = inst.points[:4]
        for p in ring:
            assert math.hypot(p.x, p.y) == pytest.approx(1.0, abs=2e-4)

    def test_bad_count_rejected(self):
        with pytest.raises(ValueError):
            clipped_circle_family(7)
        with pytest.raises(ValueError):
            clipped_circle_family(3)
