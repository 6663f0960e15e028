"""
Greedy shortcut pruning over the tips of a path.

Walks back from the goal tip and, at every tip, jumps to the earliest tip
that it can reach with a collision-free Reeds-Shepp connection.
"""

import logging
from typing import Dict, List, Sequence, Tuple

from src.optimize.base_optimizer import BaseOptimizer, OptimizationResult, Sample, find_tips

logger = logging.getLogger(__name__)


class SmartOptimizer(BaseOptimizer):
    """Single greedy pass from goal to start, splicing the longest shortcut first."""

    name = "smart"

    def optimize(self, path: Sequence[Sample]) -> OptimizationResult:
        if len(path) < 2:
            return self.unchanged(path, 0.0)

        tips = find_tips(path)
        edges: Dict[Tuple[int, int], List[Sample]] = {}
        route = [len(tips) - 1]

        j = len(tips) - 1
        while j > 0:
            for i in range(j):
                connection = self.connection(tips.poses[i], tips.poses[j])
                if connection is not None:
                    break
            else:
                i = j - 1
                connection = self.original_edge(path, tips, i, j)
            edges[(i, j)] = connection[0]
            route.append(i)
            j = i

        route.reverse()
        return self.assemble(path, tips, route, edges)
