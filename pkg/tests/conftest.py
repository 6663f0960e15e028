"""
Pytest configuration and fixtures for parking planner tests.
"""

import math
import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.geometry.collision import ObstacleSet  # noqa: E402
from src.geometry.primitives import Car, Pose, SegmentObstacle  # noqa: E402
from src.planner.scenario import Bounds, Scenario  # noqa: E402

SCENARIOS_DIR = Path(__file__).parent.parent / "scenarios"


@pytest.fixture
def mock_env_vars(monkeypatch):
    """Set up planner environment variables for testing."""
    monkeypatch.setenv("PARKPLAN_TMAX", "2.5")
    monkeypatch.setenv("PARKPLAN_GFDIST", "0.1")
    monkeypatch.setenv("PARKPLAN_NEAR_DIST", "2.0")
    monkeypatch.setenv("PARKPLAN_NN_COST", "rs-flat")
    monkeypatch.setenv("PARKPLAN_OPT_MODE", "smart")
    monkeypatch.setenv("PARKPLAN_TRIALS", "20")
    monkeypatch.setenv("PARKPLAN_PARALLELISM", "2")


@pytest.fixture
def scenarios_dir():
    """Provide the directory of bundled scenario files."""
    return SCENARIOS_DIR


@pytest.fixture
def parking_car():
    """Provide the car used in the parking experiments."""
    return Car(length=3.760, width=1.625, turning_radius=10.820, wheelbase=2.450)


@pytest.fixture
def small_car():
    """Provide a small, agile car for fast planner tests."""
    return Car(length=1.0, width=0.5, turning_radius=1.0, wheelbase=0.6)


@pytest.fixture
def rng():
    """Provide a seeded numpy generator."""
    return np.random.default_rng(20240611)


@pytest.fixture
def open_scenario():
    """Provide an obstacle-free 10 m x 10 m scenario with the goal straight ahead."""
    return Scenario(
        bounds=Bounds(0.0, 10.0, 0.0, 10.0),
        p_init=Pose(2.0, 5.0, 0.0),
        p_goal=Pose(8.0, 5.0, 0.0),
        name="open",
    )


@pytest.fixture
def wall_scenario():
    """Provide a scenario whose direct route is blocked by a vertical wall."""
    wall = SegmentObstacle(5.0, 2.0, 5.0, 8.0)
    return Scenario(
        bounds=Bounds(0.0, 10.0, 0.0, 10.0),
        p_init=Pose(2.0, 5.0, 0.0),
        p_goal=Pose(8.0, 5.0, 0.0),
        obstacles=ObstacleSet(segments=(wall,)),
        name="wall",
    )


@pytest.fixture
def boxed_goal_scenario():
    """Provide a scenario whose goal is enclosed by a box smaller than the car."""
    x, y, h = 8.0, 5.0, 0.2
    box = (
        SegmentObstacle(x - h, y - h, x + h, y - h),
        SegmentObstacle(x + h, y - h, x + h, y + h),
        SegmentObstacle(x + h, y + h, x - h, y + h),
        SegmentObstacle(x - h, y + h, x - h, y - h),
    )
    return Scenario(
        bounds=Bounds(0.0, 10.0, 0.0, 10.0),
        p_init=Pose(2.0, 5.0, 0.0),
        p_goal=Pose(x, y, math.pi / 2),
        obstacles=ObstacleSet(segments=box),
        name="boxed",
    )
