"""File ingestion, output document, SVG rendering, scenario generation, and
CLI integration tests."""

from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from scpo.cli import main, parse_area, parse_fraction
from scpo.clustering import run_scpo_with_grid
from scpo.errors import (
    ConfigError,
    EmptyDataset,
    InvalidPolygon,
    ParseError,
    UnknownScenario,
)
from scpo.geometry import ObstacleSet, Point, Rect
from scpo.grid import GridConfig
from scpo.io import (
    build_output_document,
    ingest_obstacles,
    ingest_points,
    load_output_document,
    serialize_document,
    write_output_document,
)
from scpo.render import render_svg, svg_document
from scpo.scenarios import generate_scenario, write_scenario_files

GOLDEN = Path(__file__).parent / "golden"


def _run_cli(*argv: str) -> subprocess.CompletedProcess:
    env = dict(os.environ)
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "scpo", *argv],
        capture_output=True, text=True, env=env,
    )


class TestIngestPoints:
    def test_two_line_file(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("1.0,2.0\n3.0,4.0\n")
        assert ingest_points(path) == [Point(1.0, 2.0), Point(3.0, 4.0)]

    def test_comments_and_blanks_skipped(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("# header\n1.0,2.0\n\n# middle\n3.0,4.0\n")
        points = ingest_points(path)
        assert points == [Point(1.0, 2.0), Point(3.0, 4.0)]

    def test_malformed_line_names_line_number(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("1.0,2.0\n1.0;2.0\n")
        with pytest.raises(ParseError) as exc_info:
            ingest_points(path)
        assert exc_info.value.line == 2

    def test_empty_dataset(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("# nothing here\n")
        with pytest.raises(EmptyDataset):
            ingest_points(path)


class TestIngestObstacles:
    def test_single_square(self, tmp_path):
        path = tmp_path / "obs.json"
        path.write_text("[[[4,0],[6,0],[6,6],[4,6]]]")
        obs = ingest_obstacles(path)
        assert len(obs) == 1
        assert obs.total_vertex_count == 4

    def test_empty_array(self, tmp_path):
        path = tmp_path / "obs.json"
        path.write_text("[]")
        obs = ingest_obstacles(path)
        assert obs.is_empty

    def test_bowtie_rejected_with_index(self, tmp_path):
        path = tmp_path / "obs.json"
        path.write_text("[[[0,0],[1,0],[1,1],[0,1]], [[0,0],[2,2],[2,0],[0,2]]]")
        with pytest.raises(InvalidPolygon) as exc_info:
            ingest_obstacles(path)
        assert exc_info.value.index == 1

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "obs.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            ingest_obstacles(path)


def _river_document(tmp_path):
    points, obs, meta = generate_scenario("river", seed=7)
    cfg = GridConfig(area=Rect(*meta["area"]), m=meta["m"], h=meta["h"])
    result, g = run_scpo_with_grid(points, obs, cfg, collect_timings=False)
    echo = {"m": meta["m"], "h": meta["h"], "area": meta["area"]}
    return build_output_document(result, g, echo), result, g, obs


class TestOutputDocument:
    def test_round_trip_is_byte_identical(self, tmp_path):
        doc, *_ = _river_document(tmp_path)
        out = tmp_path / "result.json"
        write_output_document(doc, out)
        first = out.read_bytes()
        reloaded = load_output_document(out)
        assert serialize_document(reloaded).encode() == first

    def test_every_point_id_appears_once(self, tmp_path):
        doc, *_ = _river_document(tmp_path)
        ids = list(doc["outliers"])
        for region in doc["regions"]:
            ids.extend(region["point_ids"])
        assert sorted(ids) == list(range(doc["grid"]["n_points"]))

    def test_schema_version_frozen(self, tmp_path):
        doc, *_ = _river_document(tmp_path)
        assert doc["schema_version"] == 1


class TestRenderSvg:
    def test_empty_result_renders(self, tmp_path):
        from scpo.geometry import Polygon

        square = Polygon([Point(4, 4), Point(6, 4), Point(6, 6), Point(4, 6)])
        obs = ObstacleSet.of(square)
        points = [Point(4.6, 4.6), Point(5.4, 5.4)] * 9
        cfg = GridConfig(area=Rect(0, 0, 10, 10), m=25, h=1.0)
        result, g = run_scpo_with_grid(points, obs, cfg, collect_timings=False)
        assert result.regions == []
        text = svg_document(result, g, obs)
        assert text.startswith("<svg")
        assert text.rstrip().endswith("</svg>")
        assert "#999999" in text  # outlier gray

    def test_none_path_writes_nothing(self, tmp_path):
        points = [Point(1, 1), Point(9, 9)]
        cfg = GridConfig(area=Rect(0, 0, 10, 10), m=25, h=1.0)
        result, g = run_scpo_with_grid(points, ObstacleSet(), cfg, collect_timings=False)
        before = set(tmp_path.iterdir())
        render_svg(result, g, ObstacleSet(), None)
        assert set(tmp_path.iterdir()) == before

    def test_river_matches_golden_file(self, tmp_path):
        doc, result, g, obs = _river_document(tmp_path)
        text = svg_document(result, g, obs)
        golden = GOLDEN / "river.svg"
        assert golden.exists(), "golden file missing; regenerate with tools in README"
        assert text == golden.read_text()


class TestScenarios:
    def test_generate_is_deterministic(self, tmp_path):
        a_points, a_obs = tmp_path / "a.csv", tmp_path / "a.json"
        b_points, b_obs = tmp_path / "b.csv", tmp_path / "b.json"
        write_scenario_files("river", 7, a_points, a_obs)
        write_scenario_files("river", 7, b_points, b_obs)
        assert a_points.read_bytes() == b_points.read_bytes()
        assert a_obs.read_bytes() == b_obs.read_bytes()

    def test_uniform_noise_has_no_obstacles(self, tmp_path):
        write_scenario_files("uniform_noise", 3, tmp_path / "p.csv", tmp_path / "o.json")
        assert (tmp_path / "o.json").read_text() == "[]\n"

    def test_u_shape_mean_falls_inside_obstacle(self):
        from scpo.geometry import PointLocation, point_in_polygon

        points, obs, _ = generate_scenario("u_shape", seed=1)
        mean = Point(
            sum(p.x for p in points) / len(points),
            sum(p.y for p in points) / len(points),
        )
        assert any(point_in_polygon(mean, poly) is PointLocation.INSIDE for poly in obs)

    def test_unknown_scenario(self):
        with pytest.raises(UnknownScenario):
            generate_scenario("volcano", seed=1)


class TestCliHelpers:
    def test_parse_fraction_accepts_percent(self):
        assert parse_fraction("0.5") == 0.5
        assert parse_fraction("50%") == 0.5
        with pytest.raises(ConfigError):
            parse_fraction("abc")

    def test_parse_area(self):
        assert parse_area("auto") is None
        assert parse_area("0,0,10,10") == Rect(0, 0, 10, 10)
        with pytest.raises(ConfigError):
            parse_area("1,2,3")
        with pytest.raises(ConfigError):
            parse_area("5,5,1,1")


class TestCliIntegration:
    def test_cluster_end_to_end(self, tmp_path):
        points_path = tmp_path / "p.csv"
        obs_path = tmp_path / "o.json"
        write_scenario_files("river", 7, points_path, obs_path)
        out = tmp_path / "result.json"
        svg = tmp_path / "map.svg"
        proc = _run_cli(
            "cluster", "--points", str(points_path), "--obstacles", str(obs_path),
            "--area", "0,0,10,10", "--m", "25", "--h", "0.5",
            "--out", str(out), "--svg", str(svg),
        )
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        assert len(doc["regions"]) == 2
        assert svg.exists()

    def test_cluster_is_byte_deterministic(self, tmp_path):
        points_path = tmp_path / "p.csv"
        obs_path = tmp_path / "o.json"
        write_scenario_files("river", 9, points_path, obs_path)
        outputs = []
        for tag in ("one", "two"):
            out = tmp_path / f"{tag}.json"
            svg = tmp_path / f"{tag}.svg"
            proc = _run_cli(
                "cluster", "--points", str(points_path), "--obstacles", str(obs_path),
                "--area", "0,0,10,10", "--m", "25", "--h", "50%",
                "--out", str(out), "--svg", str(svg),
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append((out.read_bytes(), svg.read_bytes()))
        assert outputs[0][0] != b""
        # the config echo contains the output paths, which differ by design
        # here; normalize them before comparing
        doc_a = json.loads(outputs[0][0])
        doc_b = json.loads(outputs[1][0])
        doc_a["config"]["out_path"] = doc_b["config"]["out_path"] = "X"
        doc_a["config"]["svg_path"] = doc_b["config"]["svg_path"] = "X"
        assert serialize_document(doc_a) == serialize_document(doc_b)
        assert outputs[0][1] == outputs[1][1]

    def test_generate_and_cluster_auto_area(self, tmp_path):
        points_path = tmp_path / "p.csv"
        obs_path = tmp_path / "o.json"
        proc = _run_cli(
            "generate", "--scenario", "blobs", "--seed", "4",
            "--out-points", str(points_path), "--out-obstacles", str(obs_path),
        )
        assert proc.returncode == 0, proc.stderr
        out = tmp_path / "r.json"
        proc = _run_cli(
            "cluster", "--points", str(points_path), "--obstacles", str(obs_path),
            "--m", "25", "--h", "0.5", "--out", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        assert doc["config"]["area_mode"] == "auto"
        assert len(doc["regions"]) >= 1

    def test_exit_code_1_on_missing_file(self, tmp_path):
        proc = _run_cli(
            "cluster", "--points", str(tmp_path / "absent.csv"),
            "--m", "25", "--h", "0.5", "--out", str(tmp_path / "r.json"),
        )
        assert proc.returncode == 1

    def test_exit_code_1_on_bad_config(self, tmp_path):
        points_path = tmp_path / "p.csv"
        points_path.write_text("1,1\n2,2\n")
        proc = _run_cli(
            "cluster", "--points", str(points_path),
            "--m", "24", "--h", "0.5", "--out", str(tmp_path / "r.json"),
        )
        assert proc.returncode == 1
        assert "perfect square" in proc.stderr

    def test_exit_code_1_on_usage_error(self):
        proc = _run_cli("cluster", "--points")
        assert proc.returncode == 1

    def test_exit_code_2_on_internal_error(self, tmp_path, monkeypatch):
        points_path = tmp_path / "p.csv"
        points_path.write_text("1,1\n2,2\n")
        import scpo.cli as cli_module

        def boom(*args, **kwargs):
            raise RuntimeError("synthetic failure")

        monkeypatch.setattr(cli_module, "run_scpo_with_grid", boom)
        code = main([
            "cluster", "--points", str(points_path),
            "--m", "25", "--h", "0.5", "--out", str(tmp_path / "r.json"),
        ])
        assert code == 2

    def test_timings_flag_controls_document_field(self, tmp_path):
        points_path = tmp_path / "p.csv"
        obs_path = tmp_path / "o.json"
        write_scenario_files("river", 2, points_path, obs_path)
        out = tmp_path / "r.json"
        base_args = [
            "cluster", "--points", str(points_path), "--obstacles", str(obs_path),
            "--area", "0,0,10,10", "--m", "25", "--h", "0.5", "--out", str(out),
        ]
        assert main(base_args) == 0
        assert json.loads(out.read_text())["diagnostics"]["timings"] is None
        assert main(base_args + ["--timings"]) == 0
        timings = json.loads(out.read_text())["diagnostics"]["timings"]
        assert set(timings) == {"grid_pass", "marking", "region_growth", "centers", "total"}

    def test_warnings_reach_log_and_document(self, tmp_path, caplog):
        points_path = tmp_path / "p.csv"
        # one point inside the obstacle square
        points_path.write_text("5.0,3.0\n1.0,1.0\n1.2,1.2\n9.0,9.0\n")
        obs_path = tmp_path / "o.json"
        obs_path.write_text("[[[4,0],[6,0],[6,6],[4,6]]]")
        out = tmp_path / "r.json"
        with caplog.at_level("WARNING", logger="scpo"):
            code = main([
                "cluster", "--points", str(points_path), "--obstacles", str(obs_path),
                "--area", "0,0,10,10", "--m", "25", "--h", "0.5", "--out", str(out),
            ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert any("inside an obstacle" in w for w in doc["diagnostics"]["warnings"])
        assert doc["diagnostics"]["points_in_obstacles"] == [0]
        assert any("inside an obstacle" in r.message for r in caplog.records)

    def test_marking_and_connectivity_flags(self, tmp_path):
        points_path = tmp_path / "p.csv"
        obs_path = tmp_path / "o.json"
        write_scenario_files("river", 7, points_path, obs_path)
        out = tmp_path / "r.json"
        code = main([
            "cluster", "--points", str(points_path), "--obstacles", str(obs_path),
            "--area", "0,0,10,10", "--m", "25", "--h", "0.5",
            "--connectivity", "8", "--marking", "subdivision", "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["config"]["connectivity"] == 8
        assert doc["config"]["marking"] == "subdivision"

    def test_env_var_controls_log_verbosity(self, tmp_path):
        points_path = tmp_path / "p.csv"
        obs_path = tmp_path / "o.json"
        env_base = dict(os.environ)
        src = str(Path(__file__).resolve().parents[1] / "src")
        env_base["PYTHONPATH"] = src + os.pathsep + env_base.get("PYTHONPATH", "")
        argv = [
            sys.executable, "-m", "scpo", "generate", "--scenario", "blobs",
            "--seed", "1", "--out-points", str(points_path),
            "--out-obstacles", str(obs_path),
        ]
        quiet = subprocess.run(
            argv, capture_output=True, text=True,
            env={**env_base, "SCPO_LOG_LEVEL": "error"},
        )
        chatty = subprocess.run(
            argv, capture_output=True, text=True,
            env={**env_base, "SCPO_LOG_LEVEL": "info"},
        )
        assert quiet.returncode == 0 and chatty.returncode == 0
        assert "wrote" not in quiet.stderr
        assert "wrote" in chatty.stderr

    def test_plot_writes_matplotlib_figure(self, tmp_path):
        points_path = tmp_path / "p.csv"
        obs_path = tmp_path / "o.json"
        write_scenario_files("river", 7, points_path, obs_path)
        plot = tmp_path / "map.png"
        code = main([
            "cluster", "--points", str(points_path), "--obstacles", str(obs_path),
            "--area", "0,0,10,10", "--m", "25", "--h", "0.5",
            "--out", str(tmp_path / "r.json"), "--plot", str(plot),
        ])
        assert code == 0
        assert plot.stat().st_size > 1000


class TestBenchCommand:
    def test_bench_report_structure(self, tmp_path):
        out = tmp_path / "bench.json"
        csv = tmp_path / "bench.csv"
        plot = tmp_path / "bench.png"
        code = main([
            "bench", "--scales", "200,400", "--m", "16", "--h", "0.5",
            "--out", str(out), "--csv", str(csv), "--plot", str(plot),
        ])
        assert code == 0
        report = json.loads(out.read_text())
        stages = {"grid_pass", "marking", "region_growth", "centers"}
        rows = report["rows"]
        assert {row["stage"] for row in rows} == stages
        assert {row["n"] for row in rows} == {200, 400}
        assert len(rows) == 8
        assert all(row["seconds"] > 0 for row in rows)
        header, *data = csv.read_text().strip().splitlines()
        assert header == "n,stage,seconds,repeats"
        assert len(data) == 8
        assert plot.stat().st_size > 1000
