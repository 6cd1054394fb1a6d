"""Optimal single-point insertion maximizing the minimum angle of a
(constrained) Delaunay triangulation."""

from .geom import Circle, Point, angle_at, circumcircle, general_position_check
from .triangulation import (
    Triangulation,
    build_cdt,
    build_delaunay,
    delaunay_circles,
    evaluate_insertion,
    min_angle,
)

__all__ = [
    "Circle",
    "Point",
    "Triangulation",
    "angle_at",
    "build_cdt",
    "build_delaunay",
    "circumcircle",
    "delaunay_circles",
    "evaluate_insertion",
    "general_position_check",
    "min_angle",
]
