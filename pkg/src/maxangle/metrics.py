"""Instrumented counting checks tying the arrangement and the boundary
search together: per-circle function counts against crossing counts, crossing
counts against adjacent depth, and total crossings against arrangement size.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arrangement import Arrangement, ArrangementStats, max_depth_adjacent, stats
from .boundary import BoundaryDiagnostics
from .triangulation import Triangulation


class InequalityViolation(AssertionError):
    pass


@dataclass
class MetricsReport:
    arrangement: ArrangementStats
    f: tuple[int, ...]               # per-circle max per-side function count
    d_adj: tuple[int, ...]           # per-circle max adjacent face depth
    envelope_pieces: int
    region_time: float = 0.0
    boundary_time: float = 0.0
    inequality_outcomes: dict = field(default_factory=dict)

    def to_text(self) -> str:
        st = self.arrangement
        lines = [
            f"k = {st.k}",
            f"v = {st.v}",
            f"e = {st.e}",
            f"f = {st.f}",
            f"m = {st.m}",
            f"d = {st.d}",
            f"d_bar = {st.d_bar:.6f}",
            f"X = {st.X}",
            f"u = {st.u}",
            f"e_dt = {st.e_dt}",
            f"sum_x = {sum(st.x)}",
            f"envelope_pieces = {self.envelope_pieces}",
            f"region_time = {self.region_time:.6f}",
            f"boundary_time = {self.boundary_time:.6f}",
        ]
        for name, ok in sorted(self.inequality_outcomes.items()):
            lines.append(f"{name} = {'pass' if ok else 'fail'}")
        for i, (fi, xi, di) in enumerate(zip(self.f, st.x, self.d_adj)):
            lines.append(f"circle_{i} = f:{fi} x:{xi} d:{di}")
        return "\n".join(lines) + "\n"


def verify_inequalities(t: Triangulation, arr: Arrangement,
                        bdiag: BoundaryDiagnostics,
                        strict: bool = True) -> MetricsReport:
    """Check, per circle i with x_i crossing circles, f_i live angle
    functions and deepest adjacent depth d_i: f_i <= 15 x_i + 9 and
    x_i >= d_i - 1; globally sum x_i <= 6k."""
    st = stats(arr, t)
    m = st.m
    f = tuple(bdiag.function_counts.get(ci, 0) for ci in range(m))
    d_adj = tuple(max_depth_adjacent(arr, ci) for ci in range(m))
    outcomes = {
        "f_le_15x_plus_9": all(f[i] <= 15 * st.x[i] + 9 for i in range(m)),
        "x_ge_d_minus_1": all(st.x[i] >= d_adj[i] - 1 for i in range(m)),
        "sum_x_le_6k": sum(st.x) <= 6 * st.k,
    }
    report = MetricsReport(
        arrangement=st, f=f, d_adj=d_adj,
        envelope_pieces=sum(bdiag.envelope_pieces.values()),
        inequality_outcomes=outcomes)
    if strict:
        for name, ok in outcomes.items():
            if not ok:
                raise InequalityViolation(f"counting inequality failed: {name}")
    return report
