"""
Parking Planner Command Line

Plan a single maneuver, benchmark a scenario over seeded trials, or run a
comparison campaign across nearest-neighbor or optimizer variants.

Usage:
    python -m src.main plan --scenario parallel_no_obstacle --seed 3 --svg plan.svg
    python -m src.main bench --scenario parallel_obstacle_1 --trials 200 --csv trials.csv
    python -m src.main campaign --kind opt --scenario parallel_no_obstacle --out-dir results

Exit codes: 0 success, 1 no path found (plan), 2 input error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from src.bench.render import render_image, render_svg
from src.bench.scenario_io import list_scenarios, load_scenario
from src.bench.trials import (
    TrialRecord,
    run_trials,
    scenario_for_seed,
    success_times,
    write_trials_csv,
)
from src.config import NN_COST_MODES, OPT_MODES, config
from src.errors import ParkingPlannerError
from src.geometry.primitives import Car
from src.planner.rrt_star import PlannerConfig, PlanResult, plan
from src.planner.scenario import Scenario
from src.planner.tree import Sample

logger = logging.getLogger(__name__)

SCENARIOS_DIR = Path(__file__).parent.parent / "scenarios"

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_INPUT_ERROR = 2

CAMPAIGN_VARIANTS = {
    "nn": NN_COST_MODES,
    "opt": OPT_MODES,
}


def resolve_scenario(name: str) -> Path:
    """
    Find a scenario file by path or by name in the scenarios directory.

    Args:
        name: File path, or a bundled scenario name with or without ".json".

    Returns:
        Path of the scenario file (may not exist if nothing matched).
    """
    path = Path(name)
    if path.exists():
        return path
    bundled = SCENARIOS_DIR / (name if name.endswith(".json") else f"{name}.json")
    if bundled.exists():
        return bundled
    return path


def _add_planner_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", required=True,
                        help="Scenario file or bundled scenario name")
    parser.add_argument("--tmax", type=float, help="Time budget per run in seconds")
    parser.add_argument("--nn-cost", choices=NN_COST_MODES, help="Nearest-neighbor cost")
    parser.add_argument("--opt", choices=OPT_MODES, help="Path optimizer")
    parser.add_argument("--max-iterations", type=int, help="Cap on planner iterations")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")


def _add_campaign_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--trials", type=int, default=config.TRIALS, help="Number of trials")
    parser.add_argument("--seed0", type=int, default=config.SEED0, help="Seed of the first trial")
    parser.add_argument("--parallelism", type=int, default=config.PARALLELISM,
                        help="Worker processes")


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with the plan, bench and campaign subcommands."""
    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="Accelerated RRT* parking planner",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    plan_parser = subparsers.add_parser("plan", help="Plan one maneuver")
    _add_planner_arguments(plan_parser)
    plan_parser.add_argument("--seed", type=int, default=config.SEED0, help="Planner seed")
    plan_parser.add_argument("--out", help="Write the result as JSON")
    plan_parser.add_argument("--svg", help="Write an SVG drawing")
    plan_parser.add_argument("--png", help="Write a PNG drawing")

    bench_parser = subparsers.add_parser("bench", help="Run seeded trials")
    _add_planner_arguments(bench_parser)
    _add_campaign_arguments(bench_parser)
    bench_parser.add_argument("--csv", help="Write one row per trial")
    bench_parser.add_argument("--plot", help="Write a histogram of times to first path")

    campaign_parser = subparsers.add_parser(
        "campaign", help="Compare nearest-neighbor costs or optimizers"
    )
    _add_planner_arguments(campaign_parser)
    _add_campaign_arguments(campaign_parser)
    campaign_parser.add_argument("--kind", choices=sorted(CAMPAIGN_VARIANTS), required=True,
                                 help="nn compares NN costs, opt compares optimizers")
    campaign_parser.add_argument("--out-dir", default="results",
                                 help="Directory for CSV files and the figure")
    return parser


def setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s')


def planner_config(args: argparse.Namespace, **overrides) -> PlannerConfig:
    """Planner parameters from configuration, overridden by command-line flags."""
    values = dict(
        tmax=args.tmax,
        nn_cost=args.nn_cost,
        opt_mode=args.opt,
        max_iterations=args.max_iterations,
    )
    values.update(overrides)
    return PlannerConfig.from_config(config, **values)


def load(args: argparse.Namespace) -> Tuple[Scenario, Car]:
    path = resolve_scenario(args.scenario)
    if not path.exists():
        names = ", ".join(p.stem for p in list_scenarios(SCENARIOS_DIR))
        raise FileNotFoundError(f"scenario {args.scenario!r} not found (bundled: {names})")
    return load_scenario(path)


def _samples_to_json(path: Sequence[Sample]) -> List[Dict[str, float]]:
    return [
        {"x": pose.x, "y": pose.y, "theta": pose.theta, "direction": int(direction)}
        for pose, direction in path
    ]


def result_to_json(result: PlanResult, seed: int, scenario: Scenario) -> Dict:
    """JSON document written by `plan --out`."""
    return {
        "scenario": scenario.name,
        "seed": seed,
        "goal_found": result.goal_found,
        "elapsed_to_first_path": result.elapsed_to_first_path,
        "iterations": result.iterations,
        "nodes": result.nodes,
        "pre_opt_cost": result.pre_opt_cost,
        "post_opt_cost": result.post_opt_cost,
        "optimized": result.optimized,
        "raw_path": _samples_to_json(result.raw_path),
        "path": _samples_to_json(result.path),
    }


def cmd_plan(args: argparse.Namespace) -> int:
    scenario, car = load(args)
    scenario = scenario_for_seed(scenario, car, args.seed)
    cfg = planner_config(args, rng_seed=args.seed)
    result = plan(scenario, car, cfg)

    if result.goal_found:
        print(f"goal found in {result.elapsed_to_first_path:.3f} s after "
              f"{result.iterations} iterations ({result.nodes} nodes)")
        print(f"cost before optimization: {result.pre_opt_cost:.3f} m")
        print(f"cost after {cfg.opt_mode} optimization: {result.post_opt_cost:.3f} m")
    else:
        print(f"no path within {cfg.tmax} s ({result.iterations} iterations, "
              f"{result.nodes} nodes)")

    if args.out:
        Path(args.out).write_text(
            json.dumps(result_to_json(result, args.seed, scenario), indent=2) + "\n",
            encoding="utf-8",
        )
        logger.info(f"Wrote result to {args.out}")
    opath = result.path if result.optimized else None
    if args.svg:
        render_svg(scenario, car, result.tree, result.raw_path, opath, args.svg,
                   config.PIXELS_PER_METER, cfg.steer_step)
    if args.png:
        render_image(scenario, car, args.png, result.tree, result.raw_path, opath,
                     config.PIXELS_PER_METER, cfg.steer_step)

    return EXIT_OK if result.goal_found else EXIT_NOT_FOUND


def cmd_bench(args: argparse.Namespace) -> int:
    scenario, car = load(args)
    report = run_trials(scenario, car, planner_config(args), args.trials,
                        args.seed0, args.parallelism)
    for line in report.summary.lines():
        print(line)
    if args.csv:
        write_trials_csv(report.records, args.csv)
    if args.plot:
        from src.bench.plots import plot_histograms

        plot_histograms({scenario.name or "trials": success_times(report.records)},
                        args.plot, "time to first path [s]")
    return EXIT_OK


def cmd_campaign(args: argparse.Namespace) -> int:
    from src.bench.plots import plot_histograms

    scenario, car = load(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    label = scenario.name or Path(args.scenario).stem

    results: Dict[str, List[TrialRecord]] = {}
    for variant in CAMPAIGN_VARIANTS[args.kind]:
        key = "nn_cost" if args.kind == "nn" else "opt_mode"
        report = run_trials(scenario, car, planner_config(args, **{key: variant}),
                            args.trials, args.seed0, args.parallelism)
        results[variant] = report.records
        write_trials_csv(report.records, out_dir / f"{label}_{args.kind}_{variant}.csv")
        print(f"[{variant}]")
        for line in report.summary.lines():
            print(f"  {line}")

    figure = out_dir / f"{label}_{args.kind}.png"
    if args.kind == "nn":
        plot_histograms({v: success_times(r) for v, r in results.items()}, figure,
                        "time to first path [s]", title=f"{label}: nearest-neighbor cost")
    else:
        plot_histograms(
            {v: [t.post_cost for t in r if t.goal_found] for v, r in results.items()},
            figure, "path cost [m]", title=f"{label}: path optimization",
        )
    return EXIT_OK


COMMANDS = {
    "plan": cmd_plan,
    "bench": cmd_bench,
    "campaign": cmd_campaign,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name, defaults to sys.argv[1:].

    Returns:
        Process exit code.
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    problems = config.validate()
    if problems:
        for problem in problems:
            logger.error(f"Configuration error: {problem}")
        return EXIT_INPUT_ERROR

    try:
        return COMMANDS[args.command](args)
    except (ParkingPlannerError, ValueError, OSError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
