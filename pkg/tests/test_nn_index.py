"""
Tests for the y-bucketed nearest-neighbor index.
"""

import math
from dataclasses import dataclass

import pytest

from src.errors import IndexEmptyError
from src.geometry import Pose
from src.search import CostMode, NNConfig, NNIndex, PoseGrid, node_cost

R = 10.82


@dataclass(eq=False)
class Item:
    """Minimal stored object: a pose and a label."""

    pose: Pose
    label: int = 0


def _random_pose(rng, y_low=-1.0, y_high=11.0):
    return Pose(rng.uniform(0.0, 20.0), rng.uniform(y_low, y_high), rng.uniform(0.0, 2 * math.pi))


def _linear_nearest(items, query, mode, radius):
    best, best_cost = None, math.inf
    for item in items:
        c = node_cost(item.pose, query, mode, radius)
        if c < best_cost:
            best, best_cost = item, c
    return best


def _make_index(iystep=0.5, mode=CostMode.EUCLIDEAN, y_min=0.0, y_max=10.0):
    return NNIndex(NNConfig(iystep=iystep, y_min=y_min, y_max=y_max,
                            cost_mode=mode, turning_radius=R))


class TestNNConfig:
    """Tests for NNConfig validation."""

    def test_iysize_rounds_up(self):
        """Test the bucket count."""
        assert NNConfig(iystep=0.4, y_min=0.0, y_max=4.95).iysize == 13
        assert NNConfig(iystep=1.0, y_min=0.0, y_max=5.0).iysize == 5

    def test_invalid_values_raise_value_error(self):
        """Test that bad shapes are rejected."""
        with pytest.raises(ValueError, match="iystep"):
            NNConfig(iystep=0.0, y_min=0.0, y_max=1.0)
        with pytest.raises(ValueError, match="y_max"):
            NNConfig(iystep=0.1, y_min=1.0, y_max=1.0)
        with pytest.raises(ValueError, match="turning_radius"):
            NNConfig(iystep=0.1, y_min=0.0, y_max=1.0, turning_radius=0.0)

    def test_cost_mode_accepts_strings(self):
        """Test that cost mode strings are converted to CostMode."""
        config = NNConfig(iystep=0.1, y_min=0.0, y_max=1.0, cost_mode="rs-flat")
        assert config.cost_mode is CostMode.REEDS_SHEPP_FLAT_HEADING


class TestNNIndexBuckets:
    """Tests for insertion and bucket layout."""

    def test_bucket_of(self):
        """Test bucket lookup and clamping."""
        index = _make_index(iystep=1.0, y_max=5.0)
        assert index.bucket_of(2.3) == 2
        assert index.bucket_of(0.0) == 0
        assert index.bucket_of(-5.0) == 0
        assert index.bucket_of(5.0) == 4
        assert index.bucket_of(100.0) == 4

    def test_add_places_node_in_its_bucket(self):
        """Test that add fills exactly one bucket."""
        index = _make_index(iystep=1.0, y_max=5.0)
        item = Item(Pose(1.0, 2.3, 0.0))
        index.add(item)
        assert index.bucket_sizes == [0, 0, 1, 0, 0]
        assert index.bucket_contents(2) == [item]
        assert len(index) == 1

    def test_iteration_follows_insertion_order(self, rng):
        """Test that iterating yields nodes in the order they were added."""
        index = _make_index()
        items = [Item(_random_pose(rng), k) for k in range(100)]
        for item in items:
            index.add(item)
        assert list(index) == items
        assert sum(index.bucket_sizes) == 100

    def test_empty_index_raises(self):
        """Test that querying an empty index raises IndexEmptyError."""
        index = _make_index()
        with pytest.raises(IndexEmptyError, match="index empty"):
            index.nearest(Pose(1.0, 1.0, 0.0))
        with pytest.raises(IndexEmptyError):
            index.nearest_with_cost(Pose(1.0, 1.0, 0.0), CostMode.REEDS_SHEPP)


class TestNNIndexNearest:
    """Tests for nearest and nearest_with_cost against a linear scan."""

    def test_single_node_is_always_nearest(self, rng):
        """Test that a lone node is returned for any query."""
        index = _make_index()
        item = Item(Pose(3.0, 9.9, 0.0))
        index.add(item)
        for _ in range(20):
            assert index.nearest(_random_pose(rng, -50.0, 50.0)) is item

    def test_tie_goes_to_first_inserted(self):
        """Test that equally distant nodes resolve to the earliest one."""
        index = _make_index(iystep=1.0)
        first = Item(Pose(5.0, 6.0, 0.0), 1)
        second = Item(Pose(5.0, 4.0, 0.0), 2)
        duplicate = Item(Pose(5.0, 6.0, 0.0), 3)
        for item in (second, first, duplicate):
            index.add(item)
        assert index.nearest(Pose(5.0, 5.0, 0.0)) is second
        assert index.nearest(Pose(5.0, 6.0, 0.0)) is first

    def test_euclidean_matches_linear_scan(self, rng):
        """Test many random instances against exhaustive search."""
        for trial in range(10000):
            iystep = (0.05, 0.4, 1.0, 3.0)[trial % 4]
            index = _make_index(iystep=iystep)
            items = [Item(_random_pose(rng), k) for k in range(1 + trial % 25)]
            for item in items:
                index.add(item)
            query = _random_pose(rng, -3.0, 13.0)
            assert index.nearest(query) is _linear_nearest(
                items, query, CostMode.EUCLIDEAN, R
            )

    @pytest.mark.parametrize("mode", [CostMode.REEDS_SHEPP, CostMode.REEDS_SHEPP_FLAT_HEADING])
    def test_reeds_shepp_matches_linear_scan(self, rng, mode):
        """Test the Reeds-Shepp costs against exhaustive search."""
        for trial in range(150):
            index = _make_index(iystep=(0.4, 1.5)[trial % 2], mode=mode)
            items = [Item(_random_pose(rng), k) for k in range(1 + trial % 30)]
            for item in items:
                index.add(item)
            for _ in range(3):
                query = _random_pose(rng)
                assert index.nearest_with_cost(query) is _linear_nearest(items, query, mode, R)

    def test_cost_mode_override(self, rng):
        """Test that a per-query mode replaces the configured one."""
        index = _make_index(mode=CostMode.EUCLIDEAN)
        items = [Item(_random_pose(rng), k) for k in range(30)]
        for item in items:
            index.add(item)
        for _ in range(20):
            query = _random_pose(rng)
            expected = _linear_nearest(items, query, CostMode.REEDS_SHEPP, 2.0)
            assert index.nearest_with_cost(query, CostMode.REEDS_SHEPP, 2.0) is expected

    def test_flat_heading_ignores_node_heading(self):
        """Test that rs-flat costs do not depend on the stored heading."""
        query = Pose(4.0, 1.0, 0.3)
        a = node_cost(Pose(0.0, 0.0, 0.0), query, CostMode.REEDS_SHEPP_FLAT_HEADING, R)
        b = node_cost(Pose(0.0, 0.0, 2.5), query, CostMode.REEDS_SHEPP_FLAT_HEADING, R)
        assert a == b
        assert node_cost(Pose(0.0, 0.0, 0.0), Pose(3.0, 4.0, 1.0), CostMode.EUCLIDEAN, R) == 5.0

    def test_out_of_range_nodes_and_queries(self, rng):
        """Test that clamped nodes and queries are still found correctly."""
        index = _make_index(iystep=1.0, y_min=2.0, y_max=6.0)
        items = [Item(_random_pose(rng, -10.0, 20.0), k) for k in range(60)]
        for item in items:
            index.add(item)
        for _ in range(200):
            query = _random_pose(rng, -15.0, 25.0)
            assert index.nearest(query) is _linear_nearest(items, query, CostMode.EUCLIDEAN, R)


class TestNNIndexNearNodes:
    """Tests for near_nodes."""

    @pytest.mark.parametrize("mode", list(CostMode))
    def test_matches_linear_filter(self, rng, mode):
        """Test near_nodes against a filtered scan in insertion order."""
        for _ in range(40):
            index = _make_index(iystep=0.7, mode=mode)
            items = [Item(_random_pose(rng), k) for k in range(25)]
            for item in items:
                index.add(item)
            query = _random_pose(rng)
            dist = rng.uniform(0.5, 8.0)
            expected = [i for i in items if node_cost(i.pose, query, mode, R) < dist]
            assert index.near_nodes(query, dist) == expected

    def test_huge_radius_returns_everything(self, rng):
        """Test that an unbounded radius returns all nodes in order."""
        index = _make_index()
        items = [Item(_random_pose(rng), k) for k in range(40)]
        for item in items:
            index.add(item)
        assert index.near_nodes(Pose(10.0, 5.0, 0.0), 1e12) == items

    def test_bound_is_exclusive(self):
        """Test that a node exactly at the radius is excluded."""
        index = _make_index()
        item = Item(Pose(3.0, 4.0, 0.0))
        index.add(item)
        assert index.near_nodes(Pose(0.0, 0.0, 0.0), 5.0) == []
        assert index.near_nodes(Pose(0.0, 0.0, 0.0), 5.0 + 1e-9) == [item]


class TestPoseGrid:
    """Tests for the short-range position grid."""

    def test_within_matches_linear_scan(self, rng):
        """Test radius queries against a brute-force filter."""
        grid = PoseGrid(0.05)
        items = [Item(_random_pose(rng), k) for k in range(300)]
        for item in items:
            grid.add(item)
        assert len(grid) == 300
        for _ in range(200):
            query = _random_pose(rng)
            radius = rng.uniform(0.01, 3.0)
            expected = {
                id(i) for i in items
                if math.hypot(i.pose.x - query.x, i.pose.y - query.y) < radius
            }
            assert {id(i) for i in grid.within(query, radius)} == expected

    def test_neighbor_across_cell_border(self):
        """Test that a node in the next cell is still found."""
        grid = PoseGrid(0.05)
        item = Item(Pose(0.101, 0.0, 0.0))
        grid.add(item)
        assert grid.cell_of(0.099, 0.0) != grid.cell_of(0.101, 0.0)
        assert grid.within(Pose(0.099, 0.0, 0.0), 0.05) == [item]

    def test_negative_coordinates(self):
        """Test cells left of and below the origin."""
        grid = PoseGrid(0.05)
        item = Item(Pose(-3.02, -0.01, 1.0))
        grid.add(item)
        assert grid.cell_of(-3.02, -0.01) == (-61, -1)
        assert grid.within(Pose(-3.0, 0.0, 0.0), 0.05) == [item]
        assert grid.within(Pose(-3.0, 0.0, 0.0), 0.02) == []

    def test_non_positive_cell_raises_value_error(self):
        """Test that the cell size must be positive."""
        with pytest.raises(ValueError, match="cell_size"):
            PoseGrid(0.0)
