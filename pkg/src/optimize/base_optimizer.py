"""
Base class and shared helpers for path optimizers.

An optimizer takes the dense (pose, direction) path extracted from the tree
and tries to shorten it by replacing parts with direct Reeds-Shepp
connections between tip poses: the start, every cusp and the goal.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.geometry.collision import ObstacleSet, collide_path
from src.geometry.primitives import Car, Pose
from src.steering.reeds_shepp import Direction, rs_distance, rs_path, rs_sample

logger = logging.getLogger(__name__)

# Minimum cost decrease that counts as an improvement, in meters.
IMPROVEMENT_EPS = 1e-9

Sample = Tuple[Pose, Direction]


def path_cost(path: Sequence[Sample], turning_radius: float) -> float:
    """
    Cost of a path as the sum of Reeds-Shepp distances between neighbors.

    Args:
        path: (pose, direction) pairs.
        turning_radius: Turning radius R in meters.

    Returns:
        Path cost in meters, 0 for paths with fewer than two poses.
    """
    return sum(
        rs_distance(a[0], b[0], turning_radius) for a, b in zip(path, path[1:])
    )


@dataclass(frozen=True)
class TipSequence:
    """
    Tip poses of a path in path order: start, every cusp, then goal.

    Attributes:
        indices: Positions of the tips in the dense path.
        poses: Tip poses.
    """

    indices: Tuple[int, ...]
    poses: Tuple[Pose, ...]

    def __len__(self) -> int:
        return len(self.indices)


def find_tips(path: Sequence[Sample]) -> TipSequence:
    """
    Locate the start, the cusps and the goal of a path.

    A cusp is a pose whose arriving and departing directions differ, where
    NONE never counts as a direction.

    Args:
        path: (pose, direction) pairs; a pose's direction is the one it
            was reached with.

    Returns:
        The tip sequence, a single tip for a one-pose path.

    Raises:
        ValueError: If the path is empty.
    """
    if not path:
        raise ValueError("Cannot find tips of an empty path")

    indices = [0]
    for i in range(1, len(path) - 1):
        arriving = path[i][1]
        departing = path[i + 1][1]
        if Direction.NONE not in (arriving, departing) and arriving != departing:
            indices.append(i)
    if len(path) > 1:
        indices.append(len(path) - 1)
    return TipSequence(tuple(indices), tuple(path[i][0] for i in indices))


@dataclass(frozen=True)
class OptimizationResult:
    """
    Outcome of an optimization pass.

    Unpacks as (improved, path).

    Attributes:
        improved: True if path is strictly cheaper than the input.
        path: Optimized path, or the input path if not improved.
        cost: Cost of path in meters.
        original_cost: Cost of the input path in meters.
    """

    improved: bool
    path: List[Sample]
    cost: float
    original_cost: float

    def __iter__(self) -> Iterator:
        return iter((self.improved, self.path))


class BaseOptimizer(ABC):
    """
    Abstract base class for path optimizers.

    Subclasses implement `optimize`. Connections between poses are cached
    per optimizer instance.

    Attributes:
        name: Mode name used on the command line.
        car: Car used for collision checks.
        obstacles: Obstacles used for collision checks.
        steer_step: Sampling step of new connections, in meters.

    Example:
        >>> optimizer = DijkstraOptimizer(car, obstacles)
        >>> improved, path = optimizer.optimize(raw_path)
    """

    name: str = "base"

    def __init__(self, car: Car, obstacles: ObstacleSet, steer_step: float = 0.2) -> None:
        """
        Initialize the optimizer.

        Args:
            car: Car used for collision checks and the turning radius.
            obstacles: Obstacles to avoid.
            steer_step: Sampling step of new connections, in meters.

        Raises:
            ValueError: If steer_step is not positive.
        """
        if not steer_step > 0:
            raise ValueError(f"steer_step must be positive, got {steer_step}")

        self._car = car
        self._obstacles = obstacles
        self._steer_step = steer_step
        self._connections: Dict[Tuple[Pose, Pose], Optional[Tuple[List[Sample], float]]] = {}

        logger.debug(f"Initialized {self.__class__.__name__} with steer_step {steer_step}")

    @property
    def car(self) -> Car:
        return self._car

    @property
    def obstacles(self) -> ObstacleSet:
        return self._obstacles

    @property
    def steer_step(self) -> float:
        return self._steer_step

    @property
    def turning_radius(self) -> float:
        return self._car.turning_radius

    def connection(self, a: Pose, b: Pose) -> Optional[Tuple[List[Sample], float]]:
        """
        Collision-free Reeds-Shepp connection between two poses.

        Args:
            a: Start pose.
            b: End pose.

        Returns:
            (samples, length) with samples starting at a, or None if the
            swept path collides.
        """
        key = (a, b)
        if key not in self._connections:
            path = rs_path(a, b, self.turning_radius)
            samples = rs_sample(path, self._steer_step)
            if collide_path((pose for pose, _ in samples[1:]), self._car, self._obstacles):
                self._connections[key] = None
            else:
                self._connections[key] = (samples, path.total_length)
        return self._connections[key]

    def original_edge(
        self, path: Sequence[Sample], tips: TipSequence, i: int, j: int
    ) -> Tuple[List[Sample], float]:
        """Slice of the input path between tips i and j, with its cost."""
        part = list(path[tips.indices[i]:tips.indices[j] + 1])
        return part, path_cost(part, self.turning_radius)

    def assemble(
        self,
        path: Sequence[Sample],
        tips: TipSequence,
        route: Sequence[int],
        edges: Dict[Tuple[int, int], List[Sample]]
    ) -> OptimizationResult:
        """
        Join chosen edges into a path and compare it with the input.

        Args:
            path: Input path.
            tips: Tips of the input path.
            route: Increasing tip indices from 0 to the last tip.
            edges: Samples of every edge (i, j) in the route, starting at tip i.

        Returns:
            The result, falling back to the input when not cheaper.
        """
        original_cost = path_cost(path, self.turning_radius)
        new_path: List[Sample] = [path[0]]
        for i, j in zip(route, route[1:]):
            new_path.extend(edges[(i, j)][1:])
        cost = path_cost(new_path, self.turning_radius)

        if cost < original_cost - IMPROVEMENT_EPS:
            logger.info(
                f"{self.name} optimizer shortened path from {original_cost:.3f} m "
                f"to {cost:.3f} m over {len(route)} of {len(tips)} tips"
            )
            return OptimizationResult(True, new_path, cost, original_cost)

        logger.info(f"{self.name} optimizer kept the path ({original_cost:.3f} m)")
        return self.unchanged(path, original_cost)

    @staticmethod
    def unchanged(path: Sequence[Sample], cost: float) -> OptimizationResult:
        return OptimizationResult(False, list(path), cost, cost)

    @abstractmethod
    def optimize(self, path: Sequence[Sample]) -> OptimizationResult:
        """
        Shorten a collision-free path.

        Args:
            path: (pose, direction) pairs from start to goal.

        Returns:
            Result whose cost never exceeds the input cost.
        """
        pass
