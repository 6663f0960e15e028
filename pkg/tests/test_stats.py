"""
Tests for benchmark statistics.
"""

import pytest

from src.bench.stats import percentile, summarize
from src.bench.trials import TrialRecord


def _record(seed, found, time_s, pre=None, post=None):
    return TrialRecord(seed, found, time_s, pre, post, 10, "euclidean", "dijkstra")


class TestPercentile:
    """Tests for the nearest-rank percentile."""

    def test_one_to_hundred(self):
        """Test that p95 of 1..100 is 95 and p50 is 50."""
        values = list(range(1, 101))
        assert percentile(values, 95) == 95
        assert percentile(values, 50) == 50
        assert percentile(values, 100) == 100

    def test_order_does_not_matter(self):
        """Test that unsorted input gives the same result."""
        assert percentile([5.0, 1.0, 4.0, 2.0, 3.0], 50) == 3.0

    def test_single_value(self):
        """Test that every percentile of one value is that value."""
        for p in (0, 1, 50, 95, 100):
            assert percentile([7.5], p) == 7.5

    def test_zero_gives_minimum(self):
        """Test the lower edge."""
        assert percentile([3.0, 1.0, 2.0], 0) == 1.0

    def test_small_sample_rounds_rank_up(self):
        """Test that p95 of twenty values is the nineteenth."""
        assert percentile(list(range(1, 21)), 95) == 19

    def test_empty_raises(self):
        """Test that empty input raises ValueError."""
        with pytest.raises(ValueError, match="empty"):
            percentile([], 50)

    def test_out_of_range_raises(self):
        """Test that p outside [0, 100] raises ValueError."""
        with pytest.raises(ValueError, match="percentile must be"):
            percentile([1.0], 101)
        with pytest.raises(ValueError):
            percentile([1.0], -1)


class TestSummarize:
    """Tests for summarize."""

    def test_mixed_trials(self):
        """Test rates and percentiles over successes and failures."""
        records = [
            _record(0, True, 0.5, 20.0, 15.0),
            _record(1, True, 1.5, 30.0, 30.0),
            _record(2, False, 10.0),
            _record(3, True, 1.0, 25.0, 20.0),
        ]
        summary = summarize(records)
        assert summary.trials == 4
        assert summary.successes == 3
        assert summary.success_rate == pytest.approx(0.75)
        assert summary.time_p50 == 1.0
        assert summary.time_p95 == 10.0
        assert summary.pre_cost_p50 == 25.0
        assert summary.post_cost_p95 == 30.0
        assert summary.cost_ratio_p95 == pytest.approx(1.0)

    def test_all_failed(self):
        """Test that cost statistics are absent without successes."""
        summary = summarize([_record(0, False, 2.0), _record(1, False, 3.0)])
        assert summary.successes == 0
        assert summary.pre_cost_p50 is None
        assert summary.cost_ratio_p95 is None
        assert "n/a" in summary.lines()[3]

    def test_lines_report_every_metric(self):
        """Test the printed report."""
        lines = summarize([_record(0, True, 0.25, 10.0, 8.0)]).lines()
        assert lines[0] == "trials: 1"
        assert lines[1] == "success rate: 100.0% (1/1)"
        assert lines[2] == "time p50/p95: 0.250 s / 0.250 s"
        assert lines[5] == "post/pre ratio p95: 0.800"

    def test_zero_cost_success_has_no_ratio(self):
        """Test that a zero pre-optimization cost is excluded from ratios."""
        summary = summarize([_record(0, True, 0.0, 0.0, 0.0)])
        assert summary.pre_cost_p50 == 0.0
        assert summary.cost_ratio_p95 is None

    def test_empty_raises(self):
        """Test that zero records raise ValueError."""
        with pytest.raises(ValueError, match="zero trials"):
            summarize([])
