"""
Matplotlib figures for campaign results.
"""

import logging
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from src.bench.stats import percentile  # noqa: E402

logger = logging.getLogger(__name__)

COLORS = ("tab:red", "tab:blue", "tab:green", "tab:orange", "tab:purple")


def plot_histograms(
    series: Mapping[str, Sequence[float]],
    out: Union[str, Path],
    xlabel: str,
    title: Optional[str] = None,
    bins: int = 30,
    log_scale: bool = True
) -> None:
    """
    Overlaid histograms with a dashed line at each 95th percentile.

    Args:
        series: Values per variant label; empty variants are skipped.
        out: Destination image file.
        xlabel: X axis label.
        title: Optional figure title.
        bins: Number of bins.
        log_scale: Use a logarithmic x axis with log-spaced bins.
    """
    values = [v for vs in series.values() for v in vs if v > 0 or not log_scale]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    if values:
        low, high = min(values), max(values)
        if high <= low:
            high = low * 1.01 if low > 0 else low + 1.0
        if log_scale:
            edges = np.logspace(np.log10(low), np.log10(high), bins + 1)
        else:
            edges = np.linspace(low, high, bins + 1)

        for k, (label, data) in enumerate(series.items()):
            data = [v for v in data if v > 0 or not log_scale]
            if not data:
                continue
            color = COLORS[k % len(COLORS)]
            p95 = percentile(data, 95)
            ax.hist(data, bins=edges, alpha=0.5, color=color, label=f"{label} (p95 {p95:.2f})")
            ax.axvline(p95, color=color, linestyle="--", linewidth=1.5)

    if log_scale:
        ax.set_xscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("trials")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)
    logger.info(f"Wrote histogram to {out}")

