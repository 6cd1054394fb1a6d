import pytest

from maxangle.arrangement import build_arrangement, max_depth_adjacent, stats
from maxangle.boundary import BoundaryDiagnostics, boundary_search
from maxangle.geom import convex_hull
from maxangle.instances import random_instance
from maxangle.metrics import InequalityViolation, verify_inequalities
from maxangle.triangulation import build_delaunay, delaunay_circles


def run_metrics(seed, n=9):
    pts = random_instance(n, seed=seed, gp="strong")
    t = build_delaunay(pts)
    hull = convex_hull(pts)
    arr = build_arrangement(delaunay_circles(t), snap_points=pts,
                            hull_points=[pts[i] for i in hull])
    bdiag = BoundaryDiagnostics()
    boundary_search(t, arr, hull, diagnostics=bdiag)
    return pts, t, arr, bdiag


class TestInequalities:
    @pytest.mark.parametrize("seed", range(5))
    def test_all_hold_on_random_instances(self, seed):
        pts, t, arr, bdiag = run_metrics(7000 + seed)
        report = verify_inequalities(t, arr, bdiag)
        assert all(report.inequality_outcomes.values())
        st = report.arrangement
        for fi, xi in zip(report.f, st.x):
            assert fi <= 15 * xi + 9
        for xi, di in zip(st.x, report.d_adj):
            assert xi >= di - 1
        assert sum(st.x) <= 6 * st.k

    def test_adjacent_depth_definition(self):
        pts, t, arr, bdiag = run_metrics(42)
        for ci in range(len(arr.circles)):
            got = max_depth_adjacent(arr, ci)
            want = max(max(arr.faces[a[2]].depth, arr.faces[a[3]].depth)
                       for a in arr.circle_arcs(ci))
            assert got == want

    def test_report_text_format(self):
        pts, t, arr, bdiag = run_metrics(43)
        report = verify_inequalities(t, arr, bdiag)
        text = report.to_text()
        for key in ("k = ", "d = ", "m = ", "X = ", "sum_x = ",
                    "envelope_pieces = "):
            assert any(line.startswith(key) for line in text.splitlines())
        for line in text.splitlines():
            assert " = " in line or line.startswith("circle_")
