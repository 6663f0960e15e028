"""
Drawing of a scenario, the search tree and the planned paths.

One matplotlib figure backs both outputs: render_svg saves it as SVG and
render_image as a raster file. Obstacles are hatched, start and goal are
drawn as U-shaped car frames, tree edges are gray, the path before
optimization is orange and the optimized path is blue.

Every artist carries a gid, which the SVG backend writes as the id of the
artist's <g> element: "obstacle-circle-<k>", "obstacle-segment-<k>",
"tree-edge-<node id>", "path", "optimized-path", "frame-init" and
"frame-goal".
"""

import io
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Circle

from src.geometry.primitives import Car, frame_outline
from src.planner.scenario import Scenario
from src.planner.tree import Sample, Tree
from src.steering.reeds_shepp import rs_path, rs_sample

logger = logging.getLogger(__name__)

OBSTACLE_STROKE = "#404040"
TREE_STROKE = "#b0b0b0"
PATH_STROKE = "#ff8c00"
OPTIMIZED_STROKE = "#1f5fd6"
FRAME_STROKE = "#000000"

# SVG user units are points: 72 per inch.
DPI = 72.0
SVG_HASH_SALT = "parking-planner"


def _plot_samples(ax, samples: Sequence[Sample], color: str, width: float, gid: str) -> None:
    ax.plot([pose.x for pose, _ in samples], [pose.y for pose, _ in samples],
            color=color, linewidth=width, gid=gid)


def build_figure(
    scenario: Scenario,
    car: Car,
    tree: Optional[Tree] = None,
    path: Optional[Sequence[Sample]] = None,
    opath: Optional[Sequence[Sample]] = None,
    pixels_per_meter: float = 40.0,
    steer_step: float = 0.2
) -> Figure:
    """
    Draw the scenario and planner output on a figure sized to the bounds.

    The axes fill the whole figure and span the scenario bounds, so one
    meter is pixels_per_meter pixels (SVG units) in both directions.

    Args:
        scenario: Scenario to draw.
        car: Car used for the start and goal frames.
        tree: Optional search tree; each edge is re-steered and drawn.
        path: Optional path before optimization.
        opath: Optional optimized path.
        pixels_per_meter: Drawing scale.
        steer_step: Sampling step used to draw curved tree edges.

    Returns:
        The figure, not attached to pyplot.

    Raises:
        ValueError: If pixels_per_meter is not positive.
    """
    if not pixels_per_meter > 0:
        raise ValueError(f"pixels_per_meter must be positive, got {pixels_per_meter}")

    b = scenario.bounds
    fig = Figure(
        figsize=(b.width * pixels_per_meter / DPI, b.height * pixels_per_meter / DPI),
        dpi=DPI,
        facecolor="white",
    )
    ax = fig.add_axes((0.0, 0.0, 1.0, 1.0))
    ax.set_xlim(b.x_min, b.x_max)
    ax.set_ylim(b.y_min, b.y_max)
    ax.set_axis_off()

    for k, circle in enumerate(scenario.obstacles.circles):
        ax.add_patch(Circle(
            (circle.x, circle.y), circle.r, facecolor="none", edgecolor=OBSTACLE_STROKE,
            hatch="///", linewidth=1.0, gid=f"obstacle-circle-{k}",
        ))
    for k, segment in enumerate(scenario.obstacles.segments):
        ax.plot([segment.x1, segment.x2], [segment.y1, segment.y2], color=OBSTACLE_STROKE,
                linewidth=2.5, gid=f"obstacle-segment-{k}")

    if tree is not None:
        for node in tree.nodes:
            if node.parent is None:
                continue
            edge = rs_path(node.parent.pose, node.pose, tree.turning_radius)
            _plot_samples(ax, rs_sample(edge, steer_step), TREE_STROKE, 0.5,
                          f"tree-edge-{node.node_id}")

    if path:
        _plot_samples(ax, path, PATH_STROKE, 2.0, "path")
    if opath:
        _plot_samples(ax, opath, OPTIMIZED_STROKE, 2.0, "optimized-path")

    for gid, pose in (("frame-init", scenario.p_init), ("frame-goal", scenario.p_goal)):
        xs, ys = zip(*frame_outline(pose, car))
        ax.plot(xs, ys, color=FRAME_STROKE, linewidth=1.5, gid=gid)

    return fig


def render_svg(
    scenario: Scenario,
    car: Car,
    tree: Optional[Tree] = None,
    path: Optional[Sequence[Sample]] = None,
    opath: Optional[Sequence[Sample]] = None,
    out: Optional[Union[str, Path]] = None,
    pixels_per_meter: float = 40.0,
    steer_step: float = 0.2
) -> str:
    """
    Render the scenario and planner output as SVG text.

    The same inputs always give the same text.

    Args:
        scenario: Scenario to draw.
        car: Car used for the start and goal frames.
        tree: Optional search tree.
        path: Optional path before optimization.
        opath: Optional optimized path.
        out: If given, the SVG is also written to this file.
        pixels_per_meter: Drawing scale.
        steer_step: Sampling step used to draw curved tree edges.

    Returns:
        The SVG document.
    """
    fig = build_figure(scenario, car, tree, path, opath, pixels_per_meter, steer_step)
    buffer = io.BytesIO()
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    text = buffer.getvalue().decode("utf-8")
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote SVG to {out}")
    return text


def render_image(
    scenario: Scenario,
    car: Car,
    out: Union[str, Path],
    tree: Optional[Tree] = None,
    path: Optional[Sequence[Sample]] = None,
    opath: Optional[Sequence[Sample]] = None,
    pixels_per_meter: float = 40.0,
    steer_step: float = 0.2
) -> None:
    """
    Save the drawing to a file whose format follows its suffix (PNG, PDF, ...).

    Args:
        scenario: Scenario to draw.
        car: Car used for the start and goal frames.
        out: Destination file.
        tree: Optional search tree.
        path: Optional path before optimization.
        opath: Optional optimized path.
        pixels_per_meter: Drawing scale.
        steer_step: Sampling step used to draw curved tree edges.
    """
    fig = build_figure(scenario, car, tree, path, opath, pixels_per_meter, steer_step)
    fig.savefig(out, dpi=DPI)
    logger.info(f"Wrote scene to {out}")
