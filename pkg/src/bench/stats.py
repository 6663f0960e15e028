"""
Summary statistics over benchmark trials.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional, Sequence

import numpy as np

if TYPE_CHECKING:
    from src.bench.trials import TrialRecord


def percentile(values: Sequence[float], p: float) -> float:
    """
    Nearest-rank percentile: the ceil(p/100 * n)-th smallest value.

    Args:
        values: Non-empty values, in any order.
        p: Percentile in [0, 100]; p = 0 gives the minimum.

    Returns:
        The percentile value.

    Raises:
        ValueError: If values is empty or p is out of range.

    Example:
        >>> percentile(list(range(1, 101)), 95)
        95.0
    """
    if len(values) == 0:
        raise ValueError("percentile of an empty sequence")
    if not 0.0 <= p <= 100.0:
        raise ValueError(f"percentile must be in [0, 100], got {p}")
    return float(np.percentile(values, p, method="inverted_cdf"))


def _optional_percentile(values: Sequence[float], p: float) -> Optional[float]:
    return percentile(values, p) if values else None


@dataclass(frozen=True)
class Summary:
    """
    Aggregate of a trial campaign.

    Times cover every trial, failures included at their elapsed time; costs
    cover successful trials only and are None when there are none.
    """

    trials: int
    successes: int
    time_p50: float
    time_p95: float
    pre_cost_p50: Optional[float]
    pre_cost_p95: Optional[float]
    post_cost_p50: Optional[float]
    post_cost_p95: Optional[float]
    cost_ratio_p95: Optional[float]

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def lines(self) -> List[str]:
        """Human-readable report, one metric per line."""

        def fmt(value: Optional[float], unit: str) -> str:
            return "n/a" if value is None else f"{value:.3f}{unit}"

        return [
            f"trials: {self.trials}",
            f"success rate: {self.success_rate:.1%} ({self.successes}/{self.trials})",
            f"time p50/p95: {fmt(self.time_p50, ' s')} / {fmt(self.time_p95, ' s')}",
            f"pre-opt cost p50/p95: {fmt(self.pre_cost_p50, ' m')} / {fmt(self.pre_cost_p95, ' m')}",
            f"post-opt cost p50/p95: {fmt(self.post_cost_p50, ' m')} / {fmt(self.post_cost_p95, ' m')}",
            f"post/pre ratio p95: {fmt(self.cost_ratio_p95, '')}",
        ]


def summarize(records: Sequence["TrialRecord"]) -> Summary:
    """
    Success rate and 50th/95th percentiles of a list of trials.

    Args:
        records: Trial records.

    Returns:
        The summary.

    Raises:
        ValueError: If records is empty.
    """
    if not records:
        raise ValueError("cannot summarize zero trials")

    times = [r.time_s for r in records]
    found = [r for r in records if r.goal_found]
    pre = [r.pre_cost for r in found]
    post = [r.post_cost for r in found]
    ratios = [r.post_cost / r.pre_cost for r in found if r.pre_cost > 0]

    return Summary(
        trials=len(records),
        successes=len(found),
        time_p50=percentile(times, 50),
        time_p95=percentile(times, 95),
        pre_cost_p50=_optional_percentile(pre, 50),
        pre_cost_p95=_optional_percentile(pre, 95),
        post_cost_p50=_optional_percentile(post, 50),
        post_cost_p95=_optional_percentile(post, 95),
        cost_ratio_p95=_optional_percentile(ratios, 95),
    )
