"""Command-line interface.

Subcommands: optimize (best insertion point), oracle (brute-force grid
reference), metrics (arrangement statistics and counting inequalities),
render (SVG picture of an instance plus an optimize result).

Input format: one `x y` point per line, or JSON {"points": [[x, y], ...],
"segments": [[i, j], ...]}.  Segments may also come from a separate file of
`i j` index pairs via --segments.  Exit codes: 0 success, 1 I/O or format
error, 2 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time

from .arrangement import build_arrangement, stats
from .boundary import BoundaryDiagnostics, boundary_search
from .constrained import ConstrainedInstance, constrained_optimize
from .geom import Point, convex_hull, general_position_check
from .metrics import InequalityViolation, verify_inequalities
from .oracle import grid_oracle
from .pipeline import PlacementResult, optimize
from .region import hole_for
from .svgout import render_svg
from .triangulation import build_cdt, build_delaunay, delaunay_circles

EXIT_OK = 0
EXIT_IO = 1
EXIT_DEGENERATE = 2


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def load_instance(path: str, segments_path: str | None = None):
    """Returns (points, segments)."""
    text = _read_text(path)
    stripped = text.lstrip()
    points: list[Point] = []
    segments: list[tuple[int, int]] = []
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            points = [Point(float(x), float(y)) for x, y in doc["points"]]
            segments = [(int(i), int(j)) for i, j in doc.get("segments", [])]
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad JSON instance in {path}: {exc}") from exc
    else:
        for ln, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise InputError(f"{path}:{ln}: expected `x y`, got {line!r}")
            try:
                points.append(Point(float(fields[0]), float(fields[1])))
            except ValueError as exc:
                raise InputError(f"{path}:{ln}: {exc}") from exc
    if segments_path:
        for ln, line in enumerate(_read_text(segments_path).splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise InputError(
                    f"{segments_path}:{ln}: expected `i j`, got {line!r}")
            try:
                segments.append((int(fields[0]), int(fields[1])))
            except ValueError as exc:
                raise InputError(f"{segments_path}:{ln}: {exc}") from exc
    if len(points) < 3:
        raise InputError(f"{path}: need at least 3 points")
    return points, segments


def _apply_jitter(points, eps: float, seed: int):
    rng = random.Random(seed)
    return [Point(p.x + rng.uniform(-eps, eps), p.y + rng.uniform(-eps, eps))
            for p in points]


def _fmt_angle_lines(prefix: str, radians: float) -> list[str]:
    return [f"{prefix}_rad = {radians:.9g}",
            f"{prefix}_deg = {math.degrees(radians):.6g}"]


def _result_doc(result: PlacementResult) -> dict:
    d = result.diagnostics
    return {
        "point": [result.point.x, result.point.y],
        "value_rad": float(f"{result.value:.9g}"),
        "value_deg": float(f"{math.degrees(result.value):.6g}"),
        "provenance": result.provenance,
        "provenance_id": result.provenance_id,
        "theta": result.theta,
        "baseline_rad": float(f"{result.baseline:.9g}"),
        "diagnostics": {
            "k": d.k, "d": d.d, "m": d.m, "faces": d.faces,
            "region_time": round(d.region_time, 6),
            "boundary_time": round(d.boundary_time, 6),
            "arrangement_time": round(d.arrangement_time, 6),
            "verifications": d.verifications,
            "warnings": list(d.warnings),
        },
    }


def _print_result(result: PlacementResult, fmt: str):
    if fmt == "json":
        print(json.dumps(_result_doc(result), sort_keys=True))
        return
    d = result.diagnostics
    lines = [f"point = {result.point.x:.12g} {result.point.y:.12g}"]
    lines += _fmt_angle_lines("value", result.value)
    where = f"face {result.provenance_id}" if result.provenance == "cell-interior" \
        else f"circle {result.provenance_id} theta {result.theta:.9g}"
    lines.append(f"provenance = {result.provenance} ({where})")
    lines += _fmt_angle_lines("baseline", result.baseline)
    lines.append(f"k = {d.k}")
    lines.append(f"d = {d.d}")
    lines.append(f"m = {d.m}")
    for w in d.warnings:
        lines.append(f"warning = {w}")
    print("\n".join(lines))


def _run_optimize(points, segments, args) -> PlacementResult:
    if segments:
        inst = ConstrainedInstance(tuple(points), tuple(segments))
        return constrained_optimize(inst, seed=args.seed, check_gp=False)
    return optimize(points, seed=args.seed, check_gp=False)


def _check_degeneracy(points, args):
    """Returns possibly jittered points; raises SystemExit(2) on violations."""
    if args.jitter > 0.0:
        points = _apply_jitter(points, args.jitter, args.seed)
    violations = general_position_check(points)
    if violations:
        for v in violations[:20]:
            print(f"degenerate: {v}", file=sys.stderr)
        raise SystemExit(EXIT_DEGENERATE)
    return points


def cmd_optimize(args) -> int:
    points, segments = load_instance(args.input, args.segments)
    points = _check_degeneracy(points, args)
    result = _run_optimize(points, segments, args)
    _print_result(result, args.format)
    return EXIT_OK


def cmd_oracle(args) -> int:
    points, segments = load_instance(args.input, args.segments)
    points = _check_degeneracy(points, args)
    oracle = grid_oracle(points, segments, resolution=args.resolution,
                         threads=args.threads)
    doc = {
        "oracle_point": [oracle.point.x, oracle.point.y],
        "oracle_value_rad": float(f"{oracle.value:.9g}"),
        "oracle_value_deg": float(f"{math.degrees(oracle.value):.6g}"),
        "resolution": oracle.resolution,
        "evaluations": oracle.evaluations,
    }
    if args.compare:
        result = _run_optimize(points, segments, args)
        doc["optimize_value_rad"] = float(f"{result.value:.9g}")
        doc["difference_rad"] = float(f"{result.value - oracle.value:.9g}")
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        lines = [f"oracle_point = {oracle.point.x:.12g} {oracle.point.y:.12g}"]
        lines += _fmt_angle_lines("oracle_value", oracle.value)
        lines.append(f"resolution = {oracle.resolution}")
        lines.append(f"evaluations = {oracle.evaluations}")
        if args.compare:
            lines += _fmt_angle_lines("optimize_value", doc["optimize_value_rad"])
            lines.append(f"difference_rad = {doc['difference_rad']:.9g}")
        print("\n".join(lines))
    return EXIT_OK


def cmd_metrics(args) -> int:
    points, segments = load_instance(args.input, args.segments)
    if segments:
        raise InputError("metrics runs in unconstrained mode; drop --segments")
    points = _check_degeneracy(points, args)
    t = build_delaunay(points, seed=args.seed)
    hull = convex_hull(points)
    arr = build_arrangement(delaunay_circles(t), snap_points=points,
                            hull_points=[points[i] for i in hull])
    bdiag = BoundaryDiagnostics()
    t0 = time.perf_counter()
    from .region import region_search
    region_search(t, arr, hull)
    t1 = time.perf_counter()
    boundary_search(t, arr, hull, diagnostics=bdiag)
    t2 = time.perf_counter()
    try:
        report = verify_inequalities(t, arr, bdiag)
    except InequalityViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    report.region_time = t1 - t0
    report.boundary_time = t2 - t1
    sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_render(args) -> int:
    points, segments = load_instance(args.input, args.segments)
    chosen = None
    hole_pts = None
    if args.result:
        try:
            doc = json.loads(_read_text(args.result))
            chosen = Point(float(doc["point"][0]), float(doc["point"][1]))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad result file {args.result}: {exc}") from exc
    if segments:
        t = build_cdt(points, segments, seed=args.seed)
    else:
        t = build_delaunay(points, seed=args.seed)
    circles = delaunay_circles(t)
    if chosen is not None:
        try:
            hull = convex_hull(points)
            arr = build_arrangement(circles, snap_points=points,
                                    hull_points=[points[i] for i in hull])
            face = arr.faces[arr.locate(chosen)]
            if face.invalid:
                hole_pts = list(hole_for(t, face.invalid).boundary)
        except Exception:
            hole_pts = None
    svg = render_svg(points, t, circles,
                     [(points[i], points[j]) for i, j in segments],
                     chosen, hole_pts)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc}") from exc
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="maxangle",
        description="Optimal single-point insertion for (constrained) "
                    "Delaunay triangulations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="instance file (`x y` lines or JSON)")
        p.add_argument("--segments", help="constraint file (`i j` lines)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jitter", type=float, default=0.0,
                       help="perturb input by up to EPS before checks")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--threads", type=int, default=0,
                       help="worker threads for grid evaluation (0 = auto)")

    p = sub.add_parser("optimize", help="best insertion point")
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("oracle", help="brute-force grid reference")
    common(p)
    p.add_argument("--resolution", type=int, default=400)
    p.add_argument("--compare", action="store_true",
                   help="also run optimize and print the difference")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("metrics", help="arrangement statistics")
    common(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("render", help="render instance and result to SVG")
    common(p)
    p.add_argument("--result", help="JSON output of `maxangle optimize`")
    p.add_argument("output", help="output SVG path")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SystemExit as exc:
        return int(exc.code or 0)
    except ValueError as exc:
        if "degenerate" in str(exc):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DEGENERATE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
