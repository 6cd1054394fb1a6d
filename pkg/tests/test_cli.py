import json
import math
import xml.etree.ElementTree as ET

import pytest

from maxangle.cli import EXIT_DEGENERATE, EXIT_IO, EXIT_OK, main
from maxangle.instances import random_instance
from maxangle.triangulation import evaluate_insertion
from maxangle.geom import Point


@pytest.fixture
def instance_file(tmp_path):
    pts = random_instance(8, seed=11)
    path = tmp_path / "points.txt"
    path.write_text("# demo instance\n" +
                    "\n".join(f"{p.x!r} {p.y!r}" for p in pts))
    return path, pts


@pytest.fixture
def square_json(tmp_path):
    # one corner moved off the common circle of the other three
    doc = {"points": [[0, 0], [2, 0], [2.01, 2], [0, 2], [1.01, 0.35]],
           "segments": [[0, 2]]}
    path = tmp_path / "square.json"
    path.write_text(json.dumps(doc))
    return path


class TestOptimize:
    def test_text_output(self, instance_file, capsys):
        path, pts = instance_file
        assert main(["optimize", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "point = " in out
        assert "value_rad = " in out
        assert "value_deg = " in out

    def test_json_roundtrip_verifies(self, instance_file, capsys):
        path, pts = instance_file
        assert main(["optimize", str(path), "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        p = Point(doc["point"][0], doc["point"][1])
        direct = evaluate_insertion(pts, [], p)
        assert direct == pytest.approx(doc["value_rad"], abs=1e-9)
        assert doc["value_deg"] == pytest.approx(
            math.degrees(doc["value_rad"]), abs=1e-4)

    def test_deterministic_output(self, instance_file, capsys):
        path, _ = instance_file
        main(["optimize", str(path), "--format", "json"])
        first = json.loads(capsys.readouterr().out)
        main(["optimize", str(path), "--format", "json"])
        second = json.loads(capsys.readouterr().out)
        for doc in (first, second):
            for key in ("region_time", "boundary_time", "arrangement_time"):
                doc["diagnostics"].pop(key)
        assert first == second

    def test_constrained_json_instance(self, square_json, capsys):
        assert main(["optimize", str(square_json),
                     "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["value_rad"] > 0

    def test_segments_file(self, tmp_path, capsys):
        pts_path = tmp_path / "p.txt"
        pts_path.write_text("0 0\n2 0\n2.01 2\n0 2\n1.01 0.35\n")
        seg_path = tmp_path / "s.txt"
        seg_path.write_text("0 2\n")
        assert main(["optimize", str(pts_path), "--segments",
                     str(seg_path)]) == EXIT_OK


class TestExitCodes:
    def test_missing_file(self, capsys):
        assert main(["optimize", "/nonexistent/file.txt"]) == EXIT_IO

    def test_malformed_line(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("1 2\n3 four\n5 6\n")
        assert main(["optimize", str(path)]) == EXIT_IO

    def test_too_few_points(self, tmp_path, capsys):
        path = tmp_path / "two.txt"
        path.write_text("0 0\n1 1\n")
        assert main(["optimize", str(path)]) == EXIT_IO

    def test_degenerate_square(self, tmp_path, capsys):
        path = tmp_path / "sq.txt"
        path.write_text("0 0\n1 0\n1 1\n0 1\n")
        assert main(["optimize", str(path)]) == EXIT_DEGENERATE

    def test_jitter_rescues_degenerate(self, tmp_path, capsys):
        path = tmp_path / "sq.txt"
        path.write_text("0 0\n1 0\n1 1\n0 1\n")
        assert main(["optimize", str(path), "--jitter", "1e-3"]) == EXIT_OK


class TestOracle:
    def test_oracle_and_compare(self, instance_file, capsys):
        path, pts = instance_file
        assert main(["oracle", str(path), "--resolution", "60",
                     "--compare", "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["optimize_value_rad"] >= doc["oracle_value_rad"] - 1e-3
        assert doc["resolution"] == 60


class TestMetrics:
    def test_three_point_counts(self, tmp_path, capsys):
        path = tmp_path / "tri.txt"
        path.write_text("0 0\n2 0.1\n1 1.7\n")
        assert main(["metrics", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        values = dict(line.split(" = ") for line in out.splitlines()
                      if " = " in line)
        # one circle: k = v + e + f = 0 + 1 + 2
        assert values["k"] == "3"
        assert values["d"] == "1"
        assert values["m"] == "1"

    def test_rejects_segments(self, square_json, capsys):
        assert main(["metrics", str(square_json)]) == EXIT_IO

    def test_inequalities_pass(self, instance_file, capsys):
        path, _ = instance_file
        assert main(["metrics", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "f_le_15x_plus_9 = pass" in out
        assert "x_ge_d_minus_1 = pass" in out
        assert "sum_x_le_6k = pass" in out


class TestRender:
    def test_svg_well_formed_with_layers(self, instance_file, tmp_path,
                                         capsys):
        path, _ = instance_file
        result = tmp_path / "result.json"
        main(["optimize", str(path), "--format", "json"])
        result.write_text(capsys.readouterr().out)
        out = tmp_path / "out.svg"
        assert main(["render", str(path), str(out),
                     "--result", str(result)]) == EXIT_OK
        root = ET.parse(out).getroot()
        assert root.tag.endswith("svg")
        ids = {g.get("id") for g in root.iter()
               if g.tag.endswith("g")}
        assert {"circles", "triangulation", "points", "chosen-point"} <= ids

    def test_render_without_result(self, instance_file, tmp_path):
        path, _ = instance_file
        out = tmp_path / "plain.svg"
        assert main(["render", str(path), str(out)]) == EXIT_OK
        assert out.read_text().startswith("<?xml")
