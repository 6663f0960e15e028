"""
Steering functions for car-like vehicles.
"""

from src.steering.reeds_shepp import (
    Direction,
    RSPath,
    RSSegment,
    SegmentKind,
    rs_candidates,
    rs_distance,
    rs_path,
    rs_sample,
    rs_sample_lengths,
)

__all__ = [
    "Direction",
    "RSPath",
    "RSSegment",
    "SegmentKind",
    "rs_candidates",
    "rs_distance",
    "rs_path",
    "rs_sample",
    "rs_sample_lengths",
]
