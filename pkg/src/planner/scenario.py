"""
Parking scenario: workspace bounds, start and goal poses, and obstacles.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from src.errors import InvalidScenarioError
from src.geometry.collision import ObstacleSet, collide_pose
from src.geometry.primitives import Car, CircleObstacle, Pose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned rectangle [x_min, x_max] × [y_min, y_max] in meters."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    def contains(self, x: float, y: float) -> bool:
        """True if the point lies inside or on the rectangle."""
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


@dataclass(frozen=True)
class Scenario:
    """
    Planning problem for one parking maneuver.

    Attributes:
        bounds: Sampling area and extent of the nearest-neighbor index.
        p_init: Start pose.
        p_goal: Goal pose.
        obstacles: Circle and segment obstacles.
        name: Short identifier, used in logs and file names.
        description: Free text carried by scenario files.
        lot: Parking lot rectangle, needed to place random obstacles.
        street: (y_min, y_max) of the street strip, needed to place random obstacles.
        random_circle_diameter: If set, every trial adds one circle of this
            diameter on the street (see make_obstacle_scenario).

    Example:
        >>> scenario = Scenario(Bounds(0, 10, 0, 5), Pose(1, 1), Pose(8, 4))
        >>> scenario.validate(car)
    """

    bounds: Bounds
    p_init: Pose
    p_goal: Pose
    obstacles: ObstacleSet = field(default_factory=ObstacleSet)
    name: str = ""
    description: str = ""
    lot: Optional[Bounds] = None
    street: Optional[Tuple[float, float]] = None
    random_circle_diameter: Optional[float] = None

    def invariant_errors(self, car: Optional[Car] = None) -> List[str]:
        """
        List every violated scenario invariant.

        Args:
            car: If given, also check that p_init is collision-free.

        Returns:
            Human-readable descriptions, empty if the scenario is valid.
        """
        errors = []
        b = self.bounds
        if not b.x_min < b.x_max:
            errors.append(f"x_min < x_max violated ({b.x_min} >= {b.x_max})")
        if not b.y_min < b.y_max:
            errors.append(f"y_min < y_max violated ({b.y_min} >= {b.y_max})")
        if not b.contains(self.p_init.x, self.p_init.y):
            errors.append(f"p_init inside bounds violated ({self.p_init.x}, {self.p_init.y})")
        if not b.contains(self.p_goal.x, self.p_goal.y):
            errors.append(f"p_goal inside bounds violated ({self.p_goal.x}, {self.p_goal.y})")
        if car is not None and collide_pose(self.p_init, car, self.obstacles):
            errors.append("p_init collision-free violated")
        if self.street is not None and not self.street[0] < self.street[1]:
            errors.append(f"street y_min < y_max violated {self.street}")
        if self.random_circle_diameter is not None and not self.random_circle_diameter > 0:
            errors.append(
                f"random_circle diameter > 0 violated ({self.random_circle_diameter})"
            )
        return errors

    def validate(self, car: Optional[Car] = None) -> None:
        """
        Check the scenario invariants.

        Args:
            car: If given, also check that p_init is collision-free.

        Raises:
            InvalidScenarioError: Naming the first violated invariant.
        """
        errors = self.invariant_errors(car)
        if errors:
            raise InvalidScenarioError(f"invalid scenario: {errors[0]}")

    def with_circle(self, circle: CircleObstacle) -> "Scenario":
        """Return a copy with one more circle obstacle."""
        return replace(self, obstacles=self.obstacles.with_circle(circle))
