"""
Benchmark harness: scenario files, seeded trials, statistics and drawings.
"""

from src.bench.render import build_figure, render_image, render_svg
from src.bench.scenario_io import (
    load_scenario,
    loads_scenario,
    make_obstacle_scenario,
    parse_scenario,
    save_scenario,
)
from src.bench.stats import Summary, percentile, summarize
from src.bench.trials import (
    CSV_HEADER,
    TrialRecord,
    TrialReport,
    read_trials_csv,
    run_trial,
    run_trials,
    scenario_for_seed,
    write_trials_csv,
)

__all__ = [
    "CSV_HEADER",
    "Summary",
    "TrialRecord",
    "TrialReport",
    "build_figure",
    "load_scenario",
    "loads_scenario",
    "make_obstacle_scenario",
    "parse_scenario",
    "percentile",
    "read_trials_csv",
    "render_image",
    "render_svg",
    "run_trial",
    "run_trials",
    "save_scenario",
    "scenario_for_seed",
    "summarize",
    "write_trials_csv",
]
