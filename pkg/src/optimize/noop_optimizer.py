"""
Optimizer that returns the planner path unchanged.
"""

from typing import Sequence

from src.optimize.base_optimizer import BaseOptimizer, OptimizationResult, Sample, path_cost


class NoOpOptimizer(BaseOptimizer):
    """Baseline without optimization; reports the input cost."""

    name = "none"

    def optimize(self, path: Sequence[Sample]) -> OptimizationResult:
        return self.unchanged(path, path_cost(path, self.turning_radius))
