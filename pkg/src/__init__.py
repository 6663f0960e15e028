"""
Accelerated RRT* Parking Planner - Source Package

This package contains the geometry, steering, nearest-neighbor search,
planner, path optimizers and benchmarking tools for parking maneuvers.
"""

__version__ = "0.1.0"
