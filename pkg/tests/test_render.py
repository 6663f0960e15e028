"""
Tests for the scenario drawing.
"""

import xml.etree.ElementTree as ET

import pytest

from src.bench.render import build_figure, render_image, render_svg
from src.geometry import CircleObstacle
from src.planner import PlannerConfig, plan

NS = "{http://www.w3.org/2000/svg}"


def _parse(text):
    return ET.fromstring(text.encode("utf-8"))


def _groups(root, prefix):
    return [g for g in root.iter(f"{NS}g") if g.get("id", "").startswith(prefix)]


def _group(root, group_id):
    matches = [g for g in root.iter(f"{NS}g") if g.get("id") == group_id]
    return matches[0] if matches else None


def _style(group):
    return group.find(f"{NS}path").get("style")


@pytest.fixture
def planned(wall_scenario, small_car):
    """A solved wall scenario."""
    return plan(wall_scenario, small_car, PlannerConfig(rng_seed=4, tmax=60.0, near_dist=1.5))


class TestRenderSvg:
    """Tests for render_svg and build_figure."""

    def test_scenario_only(self, open_scenario, small_car):
        """Test the drawing of a bare scenario at 40 pixels per meter."""
        root = _parse(render_svg(open_scenario, small_car))
        assert root.tag == f"{NS}svg"
        view = [float(v) for v in root.get("viewBox").split()]
        assert view == pytest.approx([0.0, 0.0, 400.0, 400.0])
        assert _group(root, "frame-init") is not None
        assert _group(root, "frame-goal") is not None
        assert _groups(root, "tree-edge-") == []
        assert _group(root, "path") is None
        assert _group(root, "optimized-path") is None

    def test_scale_follows_pixels_per_meter(self, open_scenario, small_car):
        """Test that halving the scale halves the canvas."""
        root = _parse(render_svg(open_scenario, small_car, pixels_per_meter=20.0))
        view = [float(v) for v in root.get("viewBox").split()]
        assert view[2:] == pytest.approx([200.0, 200.0])

    def test_obstacles_are_drawn(self, wall_scenario, small_car):
        """Test one hatched shape per circle and one stroke per segment."""
        scenario = wall_scenario.with_circle(CircleObstacle(7.0, 1.0, 0.5))
        root = _parse(render_svg(scenario, small_car))
        circles = _groups(root, "obstacle-circle-")
        segments = _groups(root, "obstacle-segment-")
        assert len(circles) == 1 and len(segments) == 1
        assert "url(#" in _style(circles[0])
        assert "stroke: #404040" in _style(segments[0])
        assert len(_groups(root, "frame-")) == 2

    def test_tree_and_paths(self, planned, wall_scenario, small_car):
        """Test one gray shape per tree edge plus both path strokes."""
        root = _parse(render_svg(wall_scenario, small_car, planned.tree,
                                 planned.raw_path, planned.path))
        edges = _groups(root, "tree-edge-")
        assert len(edges) == len(planned.tree) - 1
        assert {g.get("id") for g in edges} == {
            f"tree-edge-{node.node_id}" for node in planned.tree if node.parent is not None
        }
        assert all("stroke: #b0b0b0" in _style(g) for g in edges)
        assert "stroke: #ff8c00" in _style(_group(root, "path"))
        assert "stroke: #1f5fd6" in _style(_group(root, "optimized-path"))

    def test_output_is_deterministic(self, planned, wall_scenario, small_car, tmp_path):
        """Test that rendering twice gives identical text and file contents."""
        target = tmp_path / "plan.svg"
        first = render_svg(wall_scenario, small_car, planned.tree, planned.raw_path,
                           planned.path, out=target)
        second = render_svg(wall_scenario, small_car, planned.tree, planned.raw_path,
                            planned.path)
        assert first == second
        assert target.read_text(encoding="utf-8") == first

    def test_scale_must_be_positive(self, open_scenario, small_car):
        """Test that a zero scale raises ValueError."""
        with pytest.raises(ValueError, match="pixels_per_meter"):
            build_figure(open_scenario, small_car, pixels_per_meter=0.0)


class TestRenderImage:
    """Tests for raster output of the same drawing."""

    def test_png_is_written_at_scale(self, planned, wall_scenario, small_car, tmp_path):
        """Test the PNG signature and its pixel size."""
        target = tmp_path / "scene.png"
        render_image(wall_scenario, small_car, target, planned.tree, planned.raw_path,
                     planned.path)
        data = target.read_bytes()
        assert data[:4] == b"\x89PNG"
        width = int.from_bytes(data[16:20], "big")
        height = int.from_bytes(data[20:24], "big")
        assert abs(width - 400) <= 1
        assert abs(height - 400) <= 1
