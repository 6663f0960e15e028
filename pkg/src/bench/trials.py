"""
Seeded benchmark trials and their CSV table.

Trial k of a campaign plans with seed seed0 + k. Trials run inline or on a
process pool; results always come back in seed order.
"""

import csv
import logging
import math
import multiprocessing
from dataclasses import dataclass, replace
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from src.bench.scenario_io import make_obstacle_scenario, parse_scenario, scenario_to_document
from src.bench.stats import Summary, summarize
from src.geometry.primitives import Car
from src.planner.rrt_star import PlannerConfig, plan
from src.planner.scenario import Scenario

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "seed", "goal_found", "time_s", "pre_cost", "post_cost", "iterations", "nn_mode", "opt_mode",
)

# Second entropy word for the random obstacle generator, so obstacle
# placement and planner sampling draw from different streams.
OBSTACLE_STREAM = 1

# Decimal places kept for times and costs, so CSV values parse back exactly.
DECIMALS = 6


@dataclass(frozen=True)
class TrialRecord:
    """
    One row of the trial table.

    Attributes:
        seed: Planner seed.
        goal_found: True if the planner reached the goal.
        time_s: Seconds to the first path, or the elapsed time on failure.
        pre_cost: Path cost before optimization, None on failure.
        post_cost: Path cost after optimization, None on failure.
        iterations: Planner iterations.
        nn_mode: Nearest-neighbor cost mode.
        opt_mode: Optimizer mode.
    """

    seed: int
    goal_found: bool
    time_s: float
    pre_cost: Optional[float]
    post_cost: Optional[float]
    iterations: int
    nn_mode: str
    opt_mode: str

    def to_row(self) -> List[str]:
        def fmt(value: Optional[float]) -> str:
            return "" if value is None else f"{value:.{DECIMALS}f}"

        return [
            str(self.seed),
            "true" if self.goal_found else "false",
            fmt(self.time_s),
            fmt(self.pre_cost),
            fmt(self.post_cost),
            str(self.iterations),
            self.nn_mode,
            self.opt_mode,
        ]

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> "TrialRecord":
        """
        Parse a CSV row keyed by header names.

        Raises:
            ValueError: If a field is malformed.
        """
        if row["goal_found"] not in ("true", "false"):
            raise ValueError(f"goal_found must be true or false, got {row['goal_found']!r}")

        def optional(value: str) -> Optional[float]:
            return None if value == "" else float(value)

        return cls(
            seed=int(row["seed"]),
            goal_found=row["goal_found"] == "true",
            time_s=float(row["time_s"]),
            pre_cost=optional(row["pre_cost"]),
            post_cost=optional(row["post_cost"]),
            iterations=int(row["iterations"]),
            nn_mode=row["nn_mode"],
            opt_mode=row["opt_mode"],
        )


@dataclass(frozen=True)
class TrialReport:
    """Records of a campaign in seed order, with their summary."""

    records: List[TrialRecord]
    summary: Summary


def _rounded(value: Optional[float]) -> Optional[float]:
    return None if value is None else round(value, DECIMALS)


def scenario_for_seed(scenario: Scenario, car: Car, seed: int) -> Scenario:
    """
    Scenario a trial with this seed plans in.

    Scenarios with a random_circle entry get one obstacle drawn from the
    seed; others are returned unchanged.
    """
    if scenario.random_circle_diameter is None:
        return scenario
    rng = np.random.default_rng([seed, OBSTACLE_STREAM])
    return make_obstacle_scenario(scenario, car, rng)


def run_trial(document: Dict[str, Any], config: PlannerConfig, seed: int) -> TrialRecord:
    """
    Plan once with a given seed.

    Args:
        document: Scenario document (see scenario_io).
        config: Planner parameters; rng_seed is replaced by seed.
        seed: Trial seed.

    Returns:
        The trial record.
    """
    scenario, car = parse_scenario(document)
    scenario = scenario_for_seed(scenario, car, seed)

    result = plan(scenario, car, replace(config, rng_seed=seed))
    record = TrialRecord(
        seed=seed,
        goal_found=result.goal_found,
        time_s=round(result.elapsed_to_first_path, DECIMALS),
        pre_cost=_rounded(result.pre_opt_cost),
        post_cost=_rounded(result.post_opt_cost),
        iterations=result.iterations,
        nn_mode=config.nn_cost.value,
        opt_mode=config.opt_mode,
    )
    logger.debug(f"Trial {seed}: {record}")
    return record


def run_trials(
    scenario: Scenario,
    car: Car,
    config: PlannerConfig,
    n_trials: int,
    seed0: int = 0,
    parallelism: int = 1
) -> TrialReport:
    """
    Run a seeded campaign of planner trials.

    Args:
        scenario: Scenario to solve.
        car: Car model.
        config: Planner parameters shared by all trials.
        n_trials: Number of trials, at least 1.
        seed0: Seed of the first trial.
        parallelism: Worker processes; 1 runs inline.

    Returns:
        Records in seed order and their summary.

    Raises:
        ValueError: If n_trials or parallelism is below 1.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be at least 1, got {n_trials}")
    if parallelism < 1:
        raise ValueError(f"parallelism must be at least 1, got {parallelism}")

    scenario.validate(car)
    document = scenario_to_document(scenario, car)
    seeds = range(seed0, seed0 + n_trials)
    worker = partial(run_trial, document, config)

    logger.info(
        f"Running {n_trials} trials of {scenario.name or 'scenario'} "
        f"(nn {config.nn_cost.value}, opt {config.opt_mode}, {parallelism} workers)"
    )
    if parallelism == 1:
        records = [worker(seed) for seed in seeds]
    else:
        with multiprocessing.Pool(processes=parallelism) as pool:
            records = pool.map(worker, seeds)

    summary = summarize(records)
    logger.info(
        f"Finished {n_trials} trials: {summary.success_rate:.1%} success, "
        f"p95 time {summary.time_p95:.3f} s"
    )
    return TrialReport(records=records, summary=summary)


def write_trials_csv(records: Sequence[TrialRecord], path: Union[str, Path]) -> None:
    """
    Write trial records with the fixed header.

    Args:
        records: Records to write, in order.
        path: Destination file.
    """
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record.to_row())
    logger.info(f"Wrote {len(records)} trials to {path}")


def read_trials_csv(path: Union[str, Path]) -> List[TrialRecord]:
    """
    Read a file written by write_trials_csv.

    Args:
        path: CSV file.

    Returns:
        Records in file order.

    Raises:
        ValueError: If the header differs from CSV_HEADER or a row is malformed.
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [TrialRecord.from_row(row) for row in reader]


def success_times(records: Sequence[TrialRecord]) -> List[float]:
    """Times to first path of the successful trials."""
    return [r.time_s for r in records if r.goal_found and math.isfinite(r.time_s)]
