"""
Configuration management for the parking planner.

Loads environment variables from .env file and provides
typed configuration values.
"""

import math
import os

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

NN_COST_MODES = ("euclidean", "rs", "rs-flat")
OPT_MODES = ("none", "smart", "dijkstra")


class Config:
    """
    Application configuration from environment variables.

    All configuration values are loaded from environment variables,
    with defaults matching the experiment setup of the planner.

    Attributes:
        TMAX: Planner time budget in seconds.
        GFDIST: Euclidean tolerance for reaching a pose, in meters.
        GFANGLE: Heading tolerance for reaching a pose, in radians.
        NEAR_DIST: Radius of the NearNodes query, in meters.
        STEER_STEP: Sampling step along steered curves, in meters.
        IYSTEP: Bucket height of the nearest-neighbor index, in meters.
        NN_COST: Nearest-neighbor cost ("euclidean", "rs", "rs-flat").
        OPT_MODE: Path optimizer ("none", "smart", "dijkstra").
        TRIALS: Default number of benchmark trials.
        SEED0: Seed of the first benchmark trial.
        PARALLELISM: Worker processes used by the benchmark.
        PIXELS_PER_METER: Scale of rendered SVG and PNG drawings.
        LOG_LEVEL: Logging level name.

    Example:
        >>> from src.config import Config
        >>> config = Config()
        >>> print(config.NN_COST)
        'euclidean'
    """

    # Planner
    TMAX: float = float(os.getenv("PARKPLAN_TMAX", "10.0"))
    GFDIST: float = float(os.getenv("PARKPLAN_GFDIST", "0.05"))
    GFANGLE: float = float(os.getenv("PARKPLAN_GFANGLE", str(math.pi / 32)))
    NEAR_DIST: float = float(os.getenv("PARKPLAN_NEAR_DIST", "3.0"))
    STEER_STEP: float = float(os.getenv("PARKPLAN_STEER_STEP", "0.2"))
    IYSTEP: float = float(os.getenv("PARKPLAN_IYSTEP", "1.0"))
    NN_COST: str = os.getenv("PARKPLAN_NN_COST", "euclidean")
    OPT_MODE: str = os.getenv("PARKPLAN_OPT_MODE", "dijkstra")

    # Benchmark
    TRIALS: int = int(os.getenv("PARKPLAN_TRIALS", "200"))
    SEED0: int = int(os.getenv("PARKPLAN_SEED0", "0"))
    PARALLELISM: int = int(os.getenv("PARKPLAN_PARALLELISM", "1"))

    # Output
    PIXELS_PER_METER: float = float(os.getenv("PARKPLAN_PIXELS_PER_METER", "40"))
    LOG_LEVEL: str = os.getenv("PARKPLAN_LOG_LEVEL", "INFO")

    @classmethod
    def validate(cls) -> list[str]:
        """
        Validate configuration values.

        Returns:
            List of invalid configuration keys with the reason.
        """
        errors = []

        for name in ("TMAX", "GFDIST", "GFANGLE", "NEAR_DIST", "STEER_STEP",
                     "IYSTEP", "PIXELS_PER_METER"):
            if not getattr(cls, name) > 0:
                errors.append(f"PARKPLAN_{name} must be positive")
        if cls.NN_COST not in NN_COST_MODES:
            errors.append(f"PARKPLAN_NN_COST must be one of {', '.join(NN_COST_MODES)}")
        if cls.OPT_MODE not in OPT_MODES:
            errors.append(f"PARKPLAN_OPT_MODE must be one of {', '.join(OPT_MODES)}")
        if cls.TRIALS < 1:
            errors.append("PARKPLAN_TRIALS must be at least 1")
        if cls.PARALLELISM < 1:
            errors.append("PARKPLAN_PARALLELISM must be at least 1")

        return errors

    @classmethod
    def is_valid(cls) -> bool:
        """
        Check if configuration is valid.

        Returns:
            True if all configuration values are valid, False otherwise.
        """
        return len(cls.validate()) == 0


# Create a singleton instance for easy access
config = Config()
