"""SVG 1.1 rendering of instances, triangulations, circle arrangements, and
placement results, organized into layers (one <g> per layer)."""

from __future__ import annotations

from .geom import Circle, Point
from .triangulation import Triangulation


def render_svg(points: list[Point],
               triangulation: Triangulation | None = None,
               circles: list[Circle] | None = None,
               segments: list[tuple[Point, Point]] | None = None,
               chosen: Point | None = None,
               hole: list[Point] | None = None,
               size: int = 800) -> str:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    if chosen is not None:
        xs.append(chosen.x)
        ys.append(chosen.y)
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    margin = 0.08 * span
    x0, y0 = min(xs) - margin, min(ys) - margin
    world = span + 2.0 * margin
    s = size / world

    def X(x): return (x - x0) * s
    def Y(y): return size - (y - y0) * s   # flip so +y is up

    sw = max(size / 800.0, 0.5)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if circles:
        parts.append('<g id="circles" fill="none" stroke="#9ecae1" '
                     f'stroke-width="{sw}">')
        for c in circles:
            parts.append(f'<circle cx="{X(c.center.x):.3f}" '
                         f'cy="{Y(c.center.y):.3f}" r="{c.radius * s:.3f}"/>')
        parts.append('</g>')
    if triangulation is not None:
        parts.append('<g id="triangulation" stroke="#636363" '
                     f'stroke-width="{sw}">')
        for (i, j) in triangulation.edges():
            a, b = triangulation.vertices[i], triangulation.vertices[j]
            parts.append(f'<line x1="{X(a.x):.3f}" y1="{Y(a.y):.3f}" '
                         f'x2="{X(b.x):.3f}" y2="{Y(b.y):.3f}"/>')
        parts.append('</g>')
    if hole:
        pts = " ".join(f"{X(p.x):.3f},{Y(p.y):.3f}" for p in hole)
        parts.append('<g id="hole">'
                     f'<polygon points="{pts}" fill="#fee0d2" '
                     f'fill-opacity="0.7" stroke="#de2d26" '
                     f'stroke-width="{1.5 * sw}"/></g>')
    if segments:
        parts.append(f'<g id="constraints" stroke="#31a354" '
                     f'stroke-width="{2.0 * sw}">')
        for (a, b) in segments:
            parts.append(f'<line x1="{X(a.x):.3f}" y1="{Y(a.y):.3f}" '
                         f'x2="{X(b.x):.3f}" y2="{Y(b.y):.3f}"/>')
        parts.append('</g>')
    parts.append('<g id="points" fill="#252525">')
    for p in points:
        parts.append(f'<circle cx="{X(p.x):.3f}" cy="{Y(p.y):.3f}" '
                     f'r="{3.0 * sw:.2f}"/>')
    parts.append('</g>')
    if chosen is not None:
        r = 6.0 * sw
        parts.append('<g id="chosen-point">'
                     f'<circle cx="{X(chosen.x):.3f}" cy="{Y(chosen.y):.3f}" '
                     f'r="{r:.2f}" fill="none" stroke="#e6550d" '
                     f'stroke-width="{2.0 * sw}"/>'
                     f'<circle cx="{X(chosen.x):.3f}" cy="{Y(chosen.y):.3f}" '
                     f'r="{1.5 * sw:.2f}" fill="#e6550d"/></g>')
    parts.append('</svg>')
    return "\n".join(parts) + "\n"
