"""
Geometric primitives for car-like motion planning.

Provides poses, the car model, circle and segment obstacles, and the
oriented car footprint. Poses are anchored at the rear-axle midpoint.
"""

import math
from dataclasses import dataclass
from typing import Tuple

TWO_PI = 2.0 * math.pi

Point = Tuple[float, float]


def normalize_angle(theta: float) -> float:
    """
    Normalize an angle to [0, 2π).

    Args:
        theta: Angle in radians.

    Returns:
        Equivalent angle in [0, 2π).
    """
    wrapped = theta % TWO_PI
    # x % 2π rounds to 2π for tiny negative x
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped


def heading_diff(a: float, b: float) -> float:
    """
    Circular absolute difference of two headings.

    Args:
        a: First heading in radians.
        b: Second heading in radians.

    Returns:
        Difference in [0, π].
    """
    diff = abs(a - b) % TWO_PI
    return min(diff, TWO_PI - diff)


@dataclass(frozen=True, slots=True)
class Pose:
    """
    Configuration (x, y, θ) of the car.

    Attributes:
        x: X coordinate of the rear-axle midpoint in meters.
        y: Y coordinate of the rear-axle midpoint in meters.
        theta: Heading in radians, normalized to [0, 2π).

    Example:
        >>> Pose(1.0, 2.0, -math.pi / 2).theta
        4.71238898038469
    """

    x: float
    y: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Pose coordinates must be finite, got ({self.x}, {self.y})")
        if not math.isfinite(self.theta):
            raise ValueError(f"Pose heading must be finite, got {self.theta}")
        if not 0.0 <= self.theta < TWO_PI:
            object.__setattr__(self, "theta", normalize_angle(self.theta))


@dataclass(frozen=True, slots=True)
class CircleObstacle:
    """Circle obstacle with center (x, y) and radius r, in meters."""

    x: float
    y: float
    r: float

    def __post_init__(self) -> None:
        if not self.r > 0:
            raise ValueError(f"Circle radius must be positive, got {self.r}")


@dataclass(frozen=True, slots=True)
class SegmentObstacle:
    """Line segment obstacle from (x1, y1) to (x2, y2), in meters."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        if self.x1 == self.x2 and self.y1 == self.y2:
            raise ValueError(
                f"Segment endpoints must be distinct, got ({self.x1}, {self.y1}) twice"
            )


@dataclass(frozen=True, slots=True)
class Car:
    """
    Car dimensions and steering limit.

    Attributes:
        length: Overall length l in meters.
        width: Overall width w in meters.
        turning_radius: Minimum turning radius R in meters.
        wheelbase: Distance b between front and rear axles in meters.

    Example:
        >>> car = Car(length=3.760, width=1.625, turning_radius=10.820, wheelbase=2.450)
        >>> round(car.rear_overhang, 3)
        0.655
    """

    length: float
    width: float
    turning_radius: float
    wheelbase: float

    def __post_init__(self) -> None:
        if not self.wheelbase > 0:
            raise ValueError(f"Car wheelbase must be positive, got {self.wheelbase}")
        if not self.length > self.wheelbase:
            raise ValueError(
                f"Car length {self.length} must exceed wheelbase {self.wheelbase}"
            )
        if not self.width > 0:
            raise ValueError(f"Car width must be positive, got {self.width}")
        if not self.turning_radius > 0:
            raise ValueError(
                f"Car turning radius must be positive, got {self.turning_radius}"
            )

    @property
    def curvature(self) -> float:
        """Maximum curvature κ = 1/R."""
        return 1.0 / self.turning_radius

    @property
    def rear_overhang(self) -> float:
        """Distance from the rear axle to the rear bumper."""
        return (self.length - self.wheelbase) / 2.0

    @property
    def front_reach(self) -> float:
        """Distance from the rear axle to the front bumper."""
        return self.length - self.rear_overhang

    @property
    def center_offset(self) -> float:
        """Distance from the rear axle to the footprint center, along the heading."""
        return (self.front_reach - self.rear_overhang) / 2.0

    @property
    def half_diagonal(self) -> float:
        """Distance from the footprint center to any corner."""
        return math.hypot(self.length / 2.0, self.width / 2.0)


@dataclass(frozen=True, slots=True)
class Footprint:
    """
    Oriented car rectangle.

    Attributes:
        corners: Rear-right, front-right, front-left, rear-left corners.
    """

    corners: Tuple[Point, Point, Point, Point]

    @property
    def xs(self) -> Tuple[float, ...]:
        """X coordinates of the corners."""
        return tuple(c[0] for c in self.corners)

    @property
    def ys(self) -> Tuple[float, ...]:
        """Y coordinates of the corners."""
        return tuple(c[1] for c in self.corners)


def _to_world(pose: Pose, u: float, v: float) -> Point:
    c = math.cos(pose.theta)
    s = math.sin(pose.theta)
    return (pose.x + u * c - v * s, pose.y + u * s + v * c)


def footprint(pose: Pose, car: Car) -> Footprint:
    """
    Compute the car rectangle at a pose.

    The rectangle extends the rear overhang behind the rear axle and
    the wheelbase plus front overhang ahead of it, centered in width.

    Args:
        pose: Car pose (rear-axle midpoint).
        car: Car dimensions.

    Returns:
        Footprint with corners in world coordinates.
    """
    rear = -car.rear_overhang
    front = car.front_reach
    half_w = car.width / 2.0
    return Footprint(corners=(
        _to_world(pose, rear, -half_w),
        _to_world(pose, front, -half_w),
        _to_world(pose, front, half_w),
        _to_world(pose, rear, half_w),
    ))


def frame_outline(pose: Pose, car: Car) -> Tuple[Point, Point, Point, Point]:
    """
    U-shaped frame of the car: both sides joined by the rear edge.

    The open end of the U marks the front of the car.

    Args:
        pose: Car pose.
        car: Car dimensions.

    Returns:
        Front-left, rear-left, rear-right and front-right points.
    """
    rr, fr, fl, rl = footprint(pose, car).corners
    return (fl, rl, rr, fr)


def euclidean_dist(a: Pose, b: Pose) -> float:
    """
    Euclidean distance between the positions of two poses, ignoring headings.

    Args:
        a: First pose.
        b: Second pose.

    Returns:
        Distance in meters.
    """
    return math.hypot(a.x - b.x, a.y - b.y)
