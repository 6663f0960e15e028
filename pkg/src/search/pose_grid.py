"""
Hash grid over node positions for short-range lookups.

The y-bucketed index scans a whole bucket even for tiny radii; this grid
keys nodes by square cells so a lookup only visits the cells that overlap
the query disc.
"""

import math
from typing import Dict, Generic, List, Tuple

from src.geometry.primitives import Pose
from src.search.nn_index import NodeT

Cell = Tuple[int, int]


class PoseGrid(Generic[NodeT]):
    """
    Dictionary of square cells, each holding the nodes whose (x, y) fall in it.

    Attributes:
        cell_size: Edge length of a cell in meters.
    """

    def __init__(self, cell_size: float) -> None:
        if not cell_size > 0:
            raise ValueError(f"cell_size must be positive, got {cell_size}")
        self._cell_size = float(cell_size)
        self._table: Dict[Cell, List[NodeT]] = {}
        self._count = 0

    @property
    def cell_size(self) -> float:
        return self._cell_size

    def __len__(self) -> int:
        return self._count

    def cell_of(self, x: float, y: float) -> Cell:
        return math.floor(x / self._cell_size), math.floor(y / self._cell_size)

    def add(self, node: NodeT) -> None:
        self._table.setdefault(self.cell_of(node.pose.x, node.pose.y), []).append(node)
        self._count += 1

    def within(self, query: Pose, radius: float) -> List[NodeT]:
        """
        Nodes strictly closer than a radius to the query position.

        Args:
            query: Query pose; only x and y are used.
            radius: Exclusive Euclidean bound in meters.

        Returns:
            Matching nodes, cell by cell and in insertion order within a cell.
        """
        lower = self.cell_of(query.x - radius, query.y - radius)
        upper = self.cell_of(query.x + radius, query.y + radius)
        found = []
        for cx in range(lower[0], upper[0] + 1):
            for cy in range(lower[1], upper[1] + 1):
                for node in self._table.get((cx, cy), ()):
                    if math.hypot(node.pose.x - query.x, node.pose.y - query.y) < radius:
                        found.append(node)
        return found
