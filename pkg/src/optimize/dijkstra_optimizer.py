"""
Shortest route over the tips of a path.

Tips are topologically ordered along the path, so the candidate edges
(i -> j, j > i) form a DAG. Dijkstra's algorithm finds the cheapest route
from the start tip to the goal tip using collision-free Reeds-Shepp
connections as edges.
"""

import heapq
import logging
import math
from typing import Dict, List, Sequence, Tuple

from src.optimize.base_optimizer import (
    BaseOptimizer,
    OptimizationResult,
    Sample,
    find_tips,
)

logger = logging.getLogger(__name__)


class DijkstraOptimizer(BaseOptimizer):
    """
    Replace the path by the cheapest chain of tip-to-tip connections.

    Every pair of tips (i, j > i) with a collision-free Reeds-Shepp
    connection is an edge weighted by the connection length. The edge
    between consecutive tips falls back to the original sub-path when its
    direct connection collides, so the input path is always a candidate.
    """

    name = "dijkstra"

    def optimize(self, path: Sequence[Sample]) -> OptimizationResult:
        if len(path) < 2:
            return self.unchanged(path, 0.0)

        tips = find_tips(path)
        count = len(tips)
        logger.debug(f"Dijkstra over {count} tips of a {len(path)}-pose path")

        ccost = [math.inf] * count
        parent = [-1] * count
        visited = [False] * count
        edges: Dict[Tuple[int, int], List[Sample]] = {}
        ccost[0] = 0.0
        queue: List[Tuple[float, int]] = [(0.0, 0)]

        while queue:
            cost, i = heapq.heappop(queue)
            if visited[i]:
                continue
            visited[i] = True
            if i == count - 1:
                break

            for j in range(i + 1, count):
                if visited[j]:
                    continue
                connection = self.connection(tips.poses[i], tips.poses[j])
                if connection is None:
                    if j != i + 1:
                        continue
                    connection = self.original_edge(path, tips, i, j)
                samples, length = connection
                if cost + length < ccost[j]:
                    ccost[j] = cost + length
                    parent[j] = i
                    edges[(i, j)] = samples
                    heapq.heappush(queue, (ccost[j], j))

        route = [count - 1]
        while route[-1] != 0:
            route.append(parent[route[-1]])
        route.reverse()

        return self.assemble(path, tips, route, edges)
