"""
Tests for poses, the car footprint and collision predicates.
"""

import math

import pytest

from src.geometry import (
    Car,
    CircleObstacle,
    ObstacleSet,
    Pose,
    SegmentObstacle,
    collide_path,
    collide_pose,
    euclidean_dist,
    footprint,
    frame_outline,
    heading_diff,
    normalize_angle,
)


def _point_in_rect(px, py, corners):
    """Independent containment test using edge cross products."""
    signs = []
    for (ax, ay), (bx, by) in zip(corners, corners[1:] + corners[:1]):
        signs.append((bx - ax) * (py - ay) - (by - ay) * (px - ax))
    return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)


def _point_segment_distance(px, py, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    return math.hypot(ax + t * dx - px, ay + t * dy - py)


def _segments_cross(p1, p2, q1, q2):
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    return d1 * d2 <= 0 and d3 * d4 <= 0


def _circle_oracle(pose, car, circle):
    corners = list(footprint(pose, car).corners)
    if _point_in_rect(circle.x, circle.y, corners):
        return True
    edges = zip(corners, corners[1:] + corners[:1])
    return min(
        _point_segment_distance(circle.x, circle.y, a[0], a[1], b[0], b[1]) for a, b in edges
    ) <= circle.r


def _segment_oracle(pose, car, seg):
    corners = list(footprint(pose, car).corners)
    p1, p2 = (seg.x1, seg.y1), (seg.x2, seg.y2)
    if _point_in_rect(*p1, corners) or _point_in_rect(*p2, corners):
        return True
    return any(
        _segments_cross(p1, p2, a, b) for a, b in zip(corners, corners[1:] + corners[:1])
    )


class TestAngles:
    """Tests for angle helpers."""

    def test_normalize_angle_wraps_negative(self):
        """Test that negative angles wrap into [0, 2π)."""
        assert normalize_angle(-math.pi / 2) == pytest.approx(1.5 * math.pi)

    def test_normalize_angle_full_turn_is_zero(self):
        """Test that 2π normalizes to 0."""
        assert normalize_angle(2 * math.pi) == 0.0

    def test_normalize_angle_tiny_negative_stays_in_range(self):
        """Test that a tiny negative angle does not round up to 2π."""
        value = normalize_angle(-1e-18)
        assert 0.0 <= value < 2 * math.pi

    def test_heading_diff_wraps_around(self):
        """Test that headings on both sides of zero are close."""
        assert heading_diff(0.01, 2 * math.pi - 0.01) == pytest.approx(0.02)

    def test_heading_diff_is_at_most_pi(self):
        """Test that opposite headings differ by π."""
        assert heading_diff(0.0, math.pi) == pytest.approx(math.pi)
        assert heading_diff(0.5, 0.5 + 3 * math.pi) == pytest.approx(math.pi)


class TestPose:
    """Tests for Pose."""

    def test_theta_is_normalized(self):
        """Test that theta is stored in [0, 2π)."""
        assert Pose(1.0, 2.0, -math.pi / 2).theta == pytest.approx(1.5 * math.pi)
        assert Pose(0.0, 0.0, 5 * math.pi).theta == pytest.approx(math.pi)

    def test_non_finite_coordinates_raise_value_error(self):
        """Test that NaN and infinite coordinates are rejected."""
        with pytest.raises(ValueError, match="finite"):
            Pose(float("nan"), 0.0)
        with pytest.raises(ValueError, match="finite"):
            Pose(0.0, 0.0, float("inf"))

    def test_pose_is_hashable(self):
        """Test that equal poses hash equally."""
        assert len({Pose(1.0, 2.0, 0.5), Pose(1.0, 2.0, 0.5)}) == 1


class TestObstaclesAndCar:
    """Tests for obstacle and car validation."""

    def test_circle_radius_must_be_positive(self):
        """Test that a zero radius raises ValueError."""
        with pytest.raises(ValueError, match="radius"):
            CircleObstacle(0.0, 0.0, 0.0)

    def test_segment_endpoints_must_differ(self):
        """Test that a degenerate segment raises ValueError."""
        with pytest.raises(ValueError, match="distinct"):
            SegmentObstacle(1.0, 1.0, 1.0, 1.0)

    def test_car_length_must_exceed_wheelbase(self):
        """Test that l > b is enforced."""
        with pytest.raises(ValueError, match="wheelbase"):
            Car(length=2.0, width=1.0, turning_radius=5.0, wheelbase=2.5)

    def test_car_rejects_non_positive_values(self):
        """Test that width and turning radius must be positive."""
        with pytest.raises(ValueError, match="width"):
            Car(length=3.0, width=0.0, turning_radius=5.0, wheelbase=2.0)
        with pytest.raises(ValueError, match="turning radius"):
            Car(length=3.0, width=1.0, turning_radius=-1.0, wheelbase=2.0)

    def test_car_derived_dimensions(self, parking_car):
        """Test overhangs and curvature of the parking car."""
        assert parking_car.rear_overhang == pytest.approx(0.655)
        assert parking_car.front_reach == pytest.approx(3.105)
        assert parking_car.curvature * parking_car.turning_radius == pytest.approx(1.0)

    def test_obstacle_set_with_circle(self):
        """Test that with_circle returns a larger copy."""
        base = ObstacleSet(segments=[SegmentObstacle(0, 0, 1, 0)])
        extended = base.with_circle(CircleObstacle(5.0, 5.0, 0.25))
        assert len(base) == 1
        assert len(extended) == 2
        assert isinstance(extended.segments, tuple)


class TestFootprint:
    """Tests for footprint and frame_outline."""

    def test_footprint_at_origin(self, parking_car):
        """Test the rectangle extents at the origin."""
        fp = footprint(Pose(0.0, 0.0, 0.0), parking_car)
        assert min(fp.xs) == pytest.approx(-0.655)
        assert max(fp.xs) == pytest.approx(3.105)
        assert min(fp.ys) == pytest.approx(-0.8125)
        assert max(fp.ys) == pytest.approx(0.8125)

    def test_footprint_rotated_quarter_turn(self, parking_car):
        """Test that heading π/2 rotates the rectangle."""
        fp = footprint(Pose(0.0, 0.0, math.pi / 2), parking_car)
        assert min(fp.xs) == pytest.approx(-0.8125)
        assert max(fp.xs) == pytest.approx(0.8125)
        assert min(fp.ys) == pytest.approx(-0.655)
        assert max(fp.ys) == pytest.approx(3.105)

    def test_footprint_translation_equivariance(self, parking_car):
        """Test that translating the pose translates every corner."""
        base = footprint(Pose(0.0, 0.0, 0.0), parking_car)
        moved = footprint(Pose(1.0, 2.0, 0.0), parking_car)
        for (bx, by), (mx, my) in zip(base.corners, moved.corners):
            assert mx == pytest.approx(bx + 1.0, abs=1e-9)
            assert my == pytest.approx(by + 2.0, abs=1e-9)

    def test_footprint_is_rectangle_of_car_size(self, parking_car, rng):
        """Test side lengths for random poses."""
        for _ in range(100):
            pose = Pose(*rng.uniform(-10, 10, size=2), rng.uniform(0, 2 * math.pi))
            c = footprint(pose, parking_car).corners
            assert math.dist(c[0], c[1]) == pytest.approx(parking_car.length, abs=1e-9)
            assert math.dist(c[1], c[2]) == pytest.approx(parking_car.width, abs=1e-9)
            assert math.dist(c[0], c[2]) == pytest.approx(parking_car.half_diagonal * 2, abs=1e-9)

    def test_frame_outline_is_open_at_the_front(self, parking_car):
        """Test that the U frame ends at both front corners."""
        fl, rl, rr, fr = frame_outline(Pose(0.0, 0.0, 0.0), parking_car)
        assert fl[0] == pytest.approx(3.105)
        assert fr[0] == pytest.approx(3.105)
        assert rl[0] == pytest.approx(-0.655)
        assert rr[0] == pytest.approx(-0.655)
        assert fl[1] > 0 > fr[1]


class TestCollidePose:
    """Tests for collide_pose."""

    def test_far_circle_does_not_collide(self, parking_car):
        """Test that a distant circle is free."""
        obstacles = ObstacleSet(circles=[CircleObstacle(100.0, 100.0, 0.25)])
        assert not collide_pose(Pose(0, 0, 0), parking_car, obstacles)

    def test_circle_inside_footprint_collides(self, parking_car):
        """Test that a circle contained in the car collides."""
        obstacles = ObstacleSet(circles=[CircleObstacle(1.0, 0.0, 0.25)])
        assert collide_pose(Pose(0, 0, 0), parking_car, obstacles)

    def test_circle_at_front_bumper_boundary(self, parking_car):
        """Test both sides of tangency at the front bumper."""
        pose = Pose(0, 0, 0)
        near = ObstacleSet(circles=[CircleObstacle(3.105 + 0.25 - 1e-3, 0.0, 0.25)])
        far = ObstacleSet(circles=[CircleObstacle(3.105 + 0.25 + 1e-3, 0.0, 0.25)])
        assert collide_pose(pose, parking_car, near)
        assert not collide_pose(pose, parking_car, far)

    def test_large_circle_containing_car_collides(self, parking_car):
        """Test that a circle swallowing the whole car collides."""
        obstacles = ObstacleSet(circles=[CircleObstacle(1.0, 0.0, 10.0)])
        assert collide_pose(Pose(0, 0, 0), parking_car, obstacles)

    def test_segment_crossing_car_collides(self, parking_car):
        """Test a segment crossing the footprint."""
        obstacles = ObstacleSet(segments=[SegmentObstacle(1.0, -5.0, 1.0, 5.0)])
        assert collide_pose(Pose(0, 0, 0), parking_car, obstacles)

    def test_segment_inside_car_collides(self, parking_car):
        """Test a short segment entirely inside the footprint."""
        obstacles = ObstacleSet(segments=[SegmentObstacle(0.5, 0.0, 1.5, 0.1)])
        assert collide_pose(Pose(0, 0, 0), parking_car, obstacles)

    def test_segment_beside_car_is_free(self, parking_car):
        """Test a segment parallel to the car side."""
        obstacles = ObstacleSet(segments=[SegmentObstacle(-2.0, 0.9, 5.0, 0.9)])
        assert not collide_pose(Pose(0, 0, 0), parking_car, obstacles)

    def test_bundled_start_and_goal_are_free(self, parking_car):
        """Test that the parking lot walls leave start and goal free."""
        walls = ObstacleSet(segments=[
            SegmentObstacle(0.0, 0.0, 6.5, 0.0),
            SegmentObstacle(0.0, 0.0, 0.0, 2.2),
            SegmentObstacle(6.5, 0.0, 6.5, 2.2),
            SegmentObstacle(-6.0, 2.2, 0.0, 2.2),
            SegmentObstacle(6.5, 2.2, 14.0, 2.2),
            SegmentObstacle(-6.0, 4.95, 14.0, 4.95),
        ])
        assert not collide_pose(Pose(2.025, 1.1, 0.0), parking_car, walls)
        assert not collide_pose(Pose(8.0, 3.575, 0.0), parking_car, walls)

    def test_circle_agrees_with_oracle(self, parking_car, rng):
        """Test circles against an independent rectangle-distance oracle."""
        disagreements = 0
        for _ in range(3000):
            pose = Pose(*rng.uniform(-3, 3, size=2), rng.uniform(0, 2 * math.pi))
            circle = CircleObstacle(*rng.uniform(-5, 5, size=2), rng.uniform(0.05, 1.0))
            expected = _circle_oracle(pose, parking_car, circle)
            if collide_pose(pose, parking_car, ObstacleSet(circles=[circle])) != expected:
                disagreements += 1
        assert disagreements <= 3

    def test_segment_agrees_with_oracle(self, parking_car, rng):
        """Test segments against an independent crossing oracle."""
        disagreements = 0
        for _ in range(3000):
            pose = Pose(*rng.uniform(-3, 3, size=2), rng.uniform(0, 2 * math.pi))
            x1, y1, x2, y2 = rng.uniform(-6, 6, size=4)
            seg = SegmentObstacle(x1, y1, x2, y2)
            expected = _segment_oracle(pose, parking_car, seg)
            if collide_pose(pose, parking_car, ObstacleSet(segments=[seg])) != expected:
                disagreements += 1
        assert disagreements <= 3

    def test_adding_obstacles_is_monotone(self, parking_car, rng):
        """Test that extra obstacles never remove a collision."""
        for _ in range(200):
            pose = Pose(*rng.uniform(-3, 3, size=2), rng.uniform(0, 2 * math.pi))
            first = CircleObstacle(*rng.uniform(-5, 5, size=2), 0.5)
            base = ObstacleSet(circles=[first])
            more = base.with_circle(CircleObstacle(*rng.uniform(-5, 5, size=2), 0.5))
            if collide_pose(pose, parking_car, base):
                assert collide_pose(pose, parking_car, more)


class TestCollidePath:
    """Tests for collide_path and euclidean_dist."""

    def test_empty_obstacles_never_collide(self, parking_car):
        """Test that any path is free without obstacles."""
        path = [Pose(float(i), 0.0, 0.1 * i) for i in range(20)]
        assert not collide_path(path, parking_car, ObstacleSet())

    def test_one_colliding_pose_is_enough(self, parking_car):
        """Test that a single colliding pose among free ones collides."""
        obstacles = ObstacleSet(circles=[CircleObstacle(0.0, 50.0, 0.25)])
        path = [Pose(float(i), 0.0, 0.0) for i in range(50)]
        path.insert(25, Pose(0.0, 49.0, 0.0))
        assert collide_path(path, parking_car, obstacles)
        assert not collide_path(path[:25], parking_car, obstacles)

    def test_collide_path_equals_any(self, parking_car, rng):
        """Test that collide_path is the OR of collide_pose."""
        obstacles = ObstacleSet(circles=[CircleObstacle(0.0, 0.0, 1.0)])
        for _ in range(50):
            path = [Pose(*rng.uniform(-8, 8, size=2), 0.0) for _ in range(5)]
            assert collide_path(path, parking_car, obstacles) == any(
                collide_pose(p, parking_car, obstacles) for p in path
            )

    def test_euclidean_dist(self, rng):
        """Test the 3-4-5 triangle, identity and symmetry."""
        assert euclidean_dist(Pose(0, 0, 0), Pose(3, 4, math.pi)) == pytest.approx(5.0)
        assert euclidean_dist(Pose(1, 2, 3), Pose(1, 2, 3)) == 0.0
        for _ in range(100):
            a = Pose(*rng.uniform(-10, 10, size=3))
            b = Pose(*rng.uniform(-10, 10, size=3))
            assert euclidean_dist(a, b) == euclidean_dist(b, a)
