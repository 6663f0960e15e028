"""
Path optimizers applied to the first path found by the planner.
"""

from typing import Dict, Type

from src.geometry.collision import ObstacleSet
from src.geometry.primitives import Car
from src.optimize.base_optimizer import (
    BaseOptimizer,
    OptimizationResult,
    TipSequence,
    find_tips,
    path_cost,
)
from src.optimize.dijkstra_optimizer import DijkstraOptimizer
from src.optimize.noop_optimizer import NoOpOptimizer
from src.optimize.smart_optimizer import SmartOptimizer

OPTIMIZERS: Dict[str, Type[BaseOptimizer]] = {
    NoOpOptimizer.name: NoOpOptimizer,
    SmartOptimizer.name: SmartOptimizer,
    DijkstraOptimizer.name: DijkstraOptimizer,
}


def create_optimizer(
    mode: str, car: Car, obstacles: ObstacleSet, steer_step: float = 0.2
) -> BaseOptimizer:
    """
    Build the optimizer for a mode name.

    Args:
        mode: "none", "smart" or "dijkstra".
        car: Car used for collision checks.
        obstacles: Obstacles to avoid.
        steer_step: Sampling step of new connections, in meters.

    Returns:
        A fresh optimizer instance.

    Raises:
        ValueError: If the mode is unknown.
    """
    try:
        optimizer_class = OPTIMIZERS[mode]
    except KeyError:
        raise ValueError(
            f"Unknown optimizer mode {mode!r}, expected one of {', '.join(OPTIMIZERS)}"
        ) from None
    return optimizer_class(car, obstacles, steer_step)


__all__ = [
    "BaseOptimizer",
    "DijkstraOptimizer",
    "NoOpOptimizer",
    "OPTIMIZERS",
    "OptimizationResult",
    "SmartOptimizer",
    "TipSequence",
    "create_optimizer",
    "find_tips",
    "path_cost",
]
