"""
Collision predicates between the car footprint and obstacles.

Rectangle-circle tests use the closest point of the rectangle to the circle
center; rectangle-segment tests clip the segment against the rectangle in the
car frame (Liang-Barsky). Touching counts as a collision.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from src.geometry.primitives import Car, CircleObstacle, Pose, SegmentObstacle


@dataclass(frozen=True)
class ObstacleSet:
    """
    Immutable collection of circle and segment obstacles.

    Attributes:
        circles: Circle obstacles.
        segments: Line segment obstacles.
    """

    circles: Tuple[CircleObstacle, ...] = ()
    segments: Tuple[SegmentObstacle, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "circles", tuple(self.circles))
        object.__setattr__(self, "segments", tuple(self.segments))

    def __len__(self) -> int:
        return len(self.circles) + len(self.segments)

    def with_circle(self, circle: CircleObstacle) -> "ObstacleSet":
        """Return a copy with one more circle obstacle."""
        return ObstacleSet(self.circles + (circle,), self.segments)


def _point_segment_dist_sq(px: float, py: float, seg: SegmentObstacle) -> float:
    dx = seg.x2 - seg.x1
    dy = seg.y2 - seg.y1
    t = ((px - seg.x1) * dx + (py - seg.y1) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    qx = seg.x1 + t * dx - px
    qy = seg.y1 + t * dy - py
    return qx * qx + qy * qy


def _clip_hits_box(
    u0: float, v0: float, u1: float, v1: float, half_l: float, half_w: float
) -> bool:
    """Liang-Barsky test of segment (u0,v0)-(u1,v1) against a centered box."""
    du = u1 - u0
    dv = v1 - v0
    t_enter = 0.0
    t_exit = 1.0
    for p, q in (
        (-du, u0 + half_l),
        (du, half_l - u0),
        (-dv, v0 + half_w),
        (dv, half_w - v0),
    ):
        if p == 0.0:
            if q < 0.0:
                return False
            continue
        r = q / p
        if p < 0.0:
            if r > t_exit:
                return False
            if r > t_enter:
                t_enter = r
        else:
            if r < t_enter:
                return False
            if r < t_exit:
                t_exit = r
    return t_enter <= t_exit


def collide_pose(pose: Pose, car: Car, obstacles: ObstacleSet) -> bool:
    """
    Check whether the car at a pose collides with any obstacle.

    A collision is any intersection of the footprint rectangle with a circle
    or segment, or the rear-axle point lying strictly inside a circle.

    Args:
        pose: Car pose.
        car: Car dimensions.
        obstacles: Obstacles of the scenario.

    Returns:
        True if the pose collides, False otherwise.
    """
    c = math.cos(pose.theta)
    s = math.sin(pose.theta)
    offset = car.center_offset
    cx = pose.x + offset * c
    cy = pose.y + offset * s
    half_l = car.length / 2.0
    half_w = car.width / 2.0
    reach = car.half_diagonal

    for circle in obstacles.circles:
        dx = circle.x - cx
        dy = circle.y - cy
        bound = reach + circle.r
        if dx * dx + dy * dy > bound * bound:
            continue
        ax = pose.x - circle.x
        ay = pose.y - circle.y
        if ax * ax + ay * ay < circle.r * circle.r:
            return True
        u = dx * c + dy * s
        v = -dx * s + dy * c
        qu = u - min(half_l, max(-half_l, u))
        qv = v - min(half_w, max(-half_w, v))
        if qu * qu + qv * qv <= circle.r * circle.r:
            return True

    reach_sq = reach * reach
    for seg in obstacles.segments:
        if _point_segment_dist_sq(cx, cy, seg) > reach_sq:
            continue
        dx0 = seg.x1 - cx
        dy0 = seg.y1 - cy
        dx1 = seg.x2 - cx
        dy1 = seg.y2 - cy
        if _clip_hits_box(
            dx0 * c + dy0 * s, -dx0 * s + dy0 * c,
            dx1 * c + dy1 * s, -dx1 * s + dy1 * c,
            half_l, half_w,
        ):
            return True

    return False


def collide_path(path: Iterable[Pose], car: Car, obstacles: ObstacleSet) -> bool:
    """
    Check whether any pose of a path collides.

    Args:
        path: Sequence of poses.
        car: Car dimensions.
        obstacles: Obstacles of the scenario.

    Returns:
        True if collide_pose is True for any pose, False otherwise.
    """
    return any(collide_pose(pose, car, obstacles) for pose in path)
