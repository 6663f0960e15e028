"""
Accelerated RRT* planner, its search tree and the scenario it solves.
"""

from src.planner.rrt_star import (
    AcceleratedRRTStar,
    PlannerConfig,
    PlanResult,
    is_near,
    plan,
    random_sample,
)
from src.planner.scenario import Bounds, Scenario
from src.planner.tree import Node, Tree

__all__ = [
    "AcceleratedRRTStar",
    "Bounds",
    "Node",
    "PlanResult",
    "PlannerConfig",
    "Scenario",
    "Tree",
    "is_near",
    "plan",
    "random_sample",
]
