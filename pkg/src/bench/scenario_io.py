"""
Reading and writing scenario files, and random obstacle placement.

Scenario files are JSON documents:

    {
      "name": "parallel_no_obstacle",
      "description": "...",
      "bounds": {"x_min": -6, "x_max": 14, "y_min": 0, "y_max": 4.95},
      "init": {"x": 8.0, "y": 3.575, "theta": 0.0},
      "goal": {"x": 2.025, "y": 1.1, "theta": 0.0},
      "car": {"length": 3.76, "width": 1.625, "turning_radius": 10.82, "wheelbase": 2.45},
      "circles": [{"x": 0, "y": 0, "r": 0.25}],
      "segments": [{"x1": 0, "y1": 0, "x2": 6.5, "y2": 0}],
      "lot": {"x_min": 0, "x_max": 6.5, "y_min": 0, "y_max": 2.2},
      "street": {"y_min": 2.2, "y_max": 4.95},
      "random_circle": {"diameter": 0.5}
    }

bounds, init, goal and car are required; unknown keys are rejected.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from src.errors import InvalidScenarioError, ScenarioError
from src.geometry.collision import ObstacleSet, collide_pose
from src.geometry.primitives import Car, CircleObstacle, Pose, SegmentObstacle
from src.planner.scenario import Bounds, Scenario

logger = logging.getLogger(__name__)

DEFAULT_OBSTACLE_DIAMETER = 0.5
MAX_PLACEMENT_ATTEMPTS = 1000

_TOP_LEVEL_KEYS = {
    "name", "description", "bounds", "init", "goal", "car",
    "circles", "segments", "lot", "street", "random_circle",
}
_REQUIRED_KEYS = ("bounds", "init", "goal", "car")
_BOUNDS_KEYS = ("x_min", "x_max", "y_min", "y_max")
_POSE_KEYS = ("x", "y", "theta")
_CAR_KEYS = ("length", "width", "turning_radius", "wheelbase")
_CIRCLE_KEYS = ("x", "y", "r")
_SEGMENT_KEYS = ("x1", "y1", "x2", "y2")
_STREET_KEYS = ("y_min", "y_max")
_RANDOM_CIRCLE_KEYS = ("diameter",)

PathLike = Union[str, Path]


class _Reader:
    """Walks a decoded document and reports problems with their key path."""

    def __init__(self, source: str) -> None:
        self._source = source

    def fail(self, where: str, message: str) -> ScenarioError:
        return ScenarioError(f"{where}: {message}", source=self._source)

    def number(self, value: Any, where: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.fail(where, f"expected a number, got {type(value).__name__}")
        if not math.isfinite(value):
            raise self.fail(where, "expected a finite number")
        return float(value)

    def record(self, value: Any, where: str, keys: Tuple[str, ...]) -> Dict[str, float]:
        if not isinstance(value, dict):
            raise self.fail(where, f"expected an object, got {type(value).__name__}")
        unknown = sorted(set(value) - set(keys))
        if unknown:
            raise self.fail(where, f"unknown key {unknown[0]!r}")
        missing = [key for key in keys if key not in value]
        if missing:
            raise self.fail(where, f"missing key {missing[0]!r}")
        return {key: self.number(value[key], f"{where}.{key}") for key in keys}

    def records(self, value: Any, where: str, keys: Tuple[str, ...]) -> List[Dict[str, float]]:
        if not isinstance(value, list):
            raise self.fail(where, f"expected an array, got {type(value).__name__}")
        return [self.record(item, f"{where}[{i}]", keys) for i, item in enumerate(value)]

    def text(self, value: Any, where: str) -> str:
        if not isinstance(value, str):
            raise self.fail(where, f"expected a string, got {type(value).__name__}")
        return value


def parse_scenario(document: Any, source: str = "<scenario>") -> Tuple[Scenario, Car]:
    """
    Build a validated scenario and car from a decoded document.

    Args:
        document: Decoded JSON value.
        source: Name used in error messages.

    Returns:
        (scenario, car).

    Raises:
        ScenarioError: If the document does not follow the format.
        InvalidScenarioError: If a scenario or car invariant is violated.
    """
    reader = _Reader(source)
    if not isinstance(document, dict):
        raise reader.fail("document", "expected an object at the top level")
    unknown = sorted(set(document) - _TOP_LEVEL_KEYS)
    if unknown:
        raise reader.fail("document", f"unknown key {unknown[0]!r}")
    for key in _REQUIRED_KEYS:
        if key not in document:
            raise reader.fail("document", f"missing key {key!r}")

    bounds = Bounds(**reader.record(document["bounds"], "bounds", _BOUNDS_KEYS))
    init = reader.record(document["init"], "init", _POSE_KEYS)
    goal = reader.record(document["goal"], "goal", _POSE_KEYS)
    car_values = reader.record(document["car"], "car", _CAR_KEYS)
    circles = reader.records(document.get("circles", []), "circles", _CIRCLE_KEYS)
    segments = reader.records(document.get("segments", []), "segments", _SEGMENT_KEYS)

    lot = None
    if "lot" in document:
        lot = Bounds(**reader.record(document["lot"], "lot", _BOUNDS_KEYS))
    street = None
    if "street" in document:
        values = reader.record(document["street"], "street", _STREET_KEYS)
        street = (values["y_min"], values["y_max"])
    diameter = None
    if "random_circle" in document:
        diameter = reader.record(
            document["random_circle"], "random_circle", _RANDOM_CIRCLE_KEYS
        )["diameter"]

    try:
        car = Car(**car_values)
        obstacles = ObstacleSet(
            circles=tuple(CircleObstacle(**c) for c in circles),
            segments=tuple(SegmentObstacle(**s) for s in segments),
        )
        scenario = Scenario(
            bounds=bounds,
            p_init=Pose(**init),
            p_goal=Pose(**goal),
            obstacles=obstacles,
            name=reader.text(document.get("name", ""), "name"),
            description=reader.text(document.get("description", ""), "description"),
            lot=lot,
            street=street,
            random_circle_diameter=diameter,
        )
    except ValueError as e:
        raise InvalidScenarioError(f"invalid scenario: {e}", source=source) from e

    errors = scenario.invariant_errors(car)
    if errors:
        raise InvalidScenarioError(f"invalid scenario: {errors[0]}", source=source)
    return scenario, car


def loads_scenario(text: str, source: str = "<string>") -> Tuple[Scenario, Car]:
    """
    Parse scenario text.

    Raises:
        ScenarioError: With line and column for malformed JSON.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(e.msg, source=source, line=e.lineno, column=e.colno) from e
    return parse_scenario(document, source)


def load_scenario(path: PathLike) -> Tuple[Scenario, Car]:
    """
    Read and validate a scenario file.

    Args:
        path: Scenario file.

    Returns:
        (scenario, car).

    Raises:
        ScenarioError: If the file cannot be read or parsed.
        InvalidScenarioError: If an invariant is violated.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read scenario: {e.strerror}", source=str(path)) from e
    scenario, car = loads_scenario(text, str(path))
    logger.info(
        f"Loaded scenario {scenario.name or path.stem} from {path} "
        f"({len(scenario.obstacles)} obstacles)"
    )
    return scenario, car


def _bounds_dict(bounds: Bounds) -> Dict[str, float]:
    return {key: getattr(bounds, key) for key in _BOUNDS_KEYS}


def scenario_to_document(scenario: Scenario, car: Car) -> Dict[str, Any]:
    """Inverse of parse_scenario."""
    document: Dict[str, Any] = {}
    if scenario.name:
        document["name"] = scenario.name
    if scenario.description:
        document["description"] = scenario.description
    document["bounds"] = _bounds_dict(scenario.bounds)
    document["init"] = {key: getattr(scenario.p_init, key) for key in _POSE_KEYS}
    document["goal"] = {key: getattr(scenario.p_goal, key) for key in _POSE_KEYS}
    document["car"] = {key: getattr(car, key) for key in _CAR_KEYS}
    document["circles"] = [
        {key: getattr(c, key) for key in _CIRCLE_KEYS} for c in scenario.obstacles.circles
    ]
    document["segments"] = [
        {key: getattr(s, key) for key in _SEGMENT_KEYS} for s in scenario.obstacles.segments
    ]
    if scenario.lot is not None:
        document["lot"] = _bounds_dict(scenario.lot)
    if scenario.street is not None:
        document["street"] = {"y_min": scenario.street[0], "y_max": scenario.street[1]}
    if scenario.random_circle_diameter is not None:
        document["random_circle"] = {"diameter": scenario.random_circle_diameter}
    return document


def save_scenario(scenario: Scenario, car: Car, path: PathLike) -> None:
    """
    Write a scenario file that load_scenario reads back unchanged.

    Args:
        scenario: Scenario to write.
        car: Car to write.
        path: Destination file.
    """
    path = Path(path)
    path.write_text(
        json.dumps(scenario_to_document(scenario, car), indent=2) + "\n", encoding="utf-8"
    )
    logger.info(f"Saved scenario to {path}")


def make_obstacle_scenario(
    base: Scenario,
    car: Car,
    rng: np.random.Generator,
    diameter: Optional[float] = None
) -> Scenario:
    """
    Add one circle obstacle on the street near the parking lot.

    The center is uniform over x in [lot.x_min - l, lot.x_max + l] (l the
    car length) and y in the street strip shrunk by the radius. Placements
    that make p_init or p_goal collide are redrawn.

    Args:
        base: Scenario with lot and street set.
        car: Car used for the start and goal collision checks.
        rng: Generator to draw from.
        diameter: Circle diameter, defaults to the scenario's
            random_circle diameter or 0.5 m.

    Returns:
        Copy of base with the extra circle.

    Raises:
        InvalidScenarioError: If base has no lot or street, or the street is
            narrower than the circle.
        ScenarioError: If no free placement is found.
    """
    if base.lot is None or base.street is None:
        raise InvalidScenarioError("random obstacle needs lot and street in the scenario")
    if diameter is None:
        diameter = base.random_circle_diameter or DEFAULT_OBSTACLE_DIAMETER
    radius = diameter / 2.0

    x_low = base.lot.x_min - car.length
    x_high = base.lot.x_max + car.length
    y_low = base.street[0] + radius
    y_high = base.street[1] - radius
    if not y_low <= y_high:
        raise InvalidScenarioError(
            f"street {base.street} is narrower than an obstacle of diameter {diameter}"
        )

    for attempt in range(1, MAX_PLACEMENT_ATTEMPTS + 1):
        circle = CircleObstacle(
            float(rng.uniform(x_low, x_high)), float(rng.uniform(y_low, y_high)), radius
        )
        candidate = base.with_circle(circle)
        if not (collide_pose(base.p_init, car, candidate.obstacles)
                or collide_pose(base.p_goal, car, candidate.obstacles)):
            logger.debug(
                f"Placed obstacle at ({circle.x:.3f}, {circle.y:.3f}) after {attempt} draws"
            )
            return candidate

    logger.warning(f"No free obstacle placement after {MAX_PLACEMENT_ATTEMPTS} draws")
    raise ScenarioError(f"no free obstacle placement after {MAX_PLACEMENT_ATTEMPTS} draws")


def list_scenarios(directory: PathLike) -> Iterable[Path]:
    """Scenario files in a directory, sorted by name."""
    return sorted(Path(directory).glob("*.json"))
