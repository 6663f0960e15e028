"""
Nearest-neighbor search over planner tree nodes.
"""

from src.search.nn_index import CostMode, NNConfig, NNIndex, node_cost
from src.search.pose_grid import PoseGrid

__all__ = [
    "CostMode",
    "NNConfig",
    "NNIndex",
    "PoseGrid",
    "node_cost",
]
