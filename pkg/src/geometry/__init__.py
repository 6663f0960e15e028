"""
Poses, car model, obstacles and collision predicates.
"""

from src.geometry.collision import ObstacleSet, collide_path, collide_pose
from src.geometry.primitives import (
    Car,
    CircleObstacle,
    Footprint,
    Pose,
    SegmentObstacle,
    euclidean_dist,
    footprint,
    frame_outline,
    heading_diff,
    normalize_angle,
)

__all__ = [
    "Car",
    "CircleObstacle",
    "Footprint",
    "ObstacleSet",
    "Pose",
    "SegmentObstacle",
    "collide_path",
    "collide_pose",
    "euclidean_dist",
    "footprint",
    "frame_outline",
    "heading_diff",
    "normalize_angle",
]
