"""
Accelerated RRT* planner for parking maneuvers.

Each iteration samples a random pose, steers the nearest tree node toward
it along the Reeds-Shepp curve, inserts the sampled intermediate poses with
RRT* connect and rewire, and then steers every new node toward the goal.
Planning stops at the first pose that is near the goal; the path found is
then shortened by the configured optimizer.
"""

import heapq
import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import OPT_MODES, Config, config as default_config
from src.errors import ConfigurationError
from src.geometry.collision import collide_path, collide_pose
from src.geometry.primitives import Car, Pose, heading_diff
from src.optimize import create_optimizer, path_cost
from src.planner.scenario import Scenario
from src.planner.tree import Node, Sample, Tree
from src.search.nn_index import CostMode, NNConfig
from src.steering.reeds_shepp import Direction, RSPath, rs_path, rs_sample, rs_sample_lengths

logger = logging.getLogger(__name__)

# Rewiring only happens for cost decreases larger than this, in meters.
REWIRE_EPS = 1e-9

# Slack subtracted from edge-cost lower bounds, in meters.
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class PlannerConfig:
    """
    Planner parameters.

    Attributes:
        tmax: Time budget in seconds.
        gfdist: Euclidean tolerance of IsNear in meters.
        gfangle: Heading tolerance of IsNear in radians.
        near_dist: Radius of the NearNodes query in meters.
        steer_step: Sampling step along steered curves in meters.
        rng_seed: Seed of the sampling generator.
        nn_cost: Cost used by the nearest-neighbor queries.
        opt_mode: Path optimizer run after a path is found.
        iystep: Bucket height of the nearest-neighbor index in meters.
        max_iterations: Optional cap on outer iterations.
        stop_at_first_goal: Stop at the first goal pose; when False the
            planner runs until the cap or tmax and tracks the best goal cost.
    """

    tmax: float = 10.0
    gfdist: float = 0.05
    gfangle: float = math.pi / 32
    near_dist: float = 3.0
    steer_step: float = 0.2
    rng_seed: int = 0
    nn_cost: CostMode = CostMode.EUCLIDEAN
    opt_mode: str = "dijkstra"
    iystep: float = 1.0
    max_iterations: Optional[int] = None
    stop_at_first_goal: bool = True

    def __post_init__(self) -> None:
        for name in ("tmax", "gfdist", "gfangle", "near_dist", "steer_step", "iystep"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.max_iterations is not None and self.max_iterations < 0:
            raise ConfigurationError(
                f"max_iterations must be non-negative, got {self.max_iterations}"
            )
        if self.opt_mode not in OPT_MODES:
            raise ConfigurationError(
                f"opt_mode must be one of {', '.join(OPT_MODES)}, got {self.opt_mode!r}"
            )
        try:
            object.__setattr__(self, "nn_cost", CostMode(self.nn_cost))
        except ValueError:
            raise ConfigurationError(f"unknown nn_cost {self.nn_cost!r}") from None

    @classmethod
    def from_config(cls, cfg: Config = default_config, **overrides) -> "PlannerConfig":
        """
        Build planner parameters from the environment configuration.

        Args:
            cfg: Configuration to read defaults from.
            **overrides: Fields that replace configured values; None values
                are ignored so unset command-line flags fall through.

        Returns:
            A validated PlannerConfig.
        """
        values = dict(
            tmax=cfg.TMAX,
            gfdist=cfg.GFDIST,
            gfangle=cfg.GFANGLE,
            near_dist=cfg.NEAR_DIST,
            steer_step=cfg.STEER_STEP,
            nn_cost=cfg.NN_COST,
            opt_mode=cfg.OPT_MODE,
            iystep=cfg.IYSTEP,
        )
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@dataclass
class PlanResult:
    """
    Outcome of one planner run.

    Attributes:
        goal_found: True if a pose near the goal was reached.
        path: Final (pose, direction) path from start to goal, empty on failure.
        pre_opt_cost: Cost of the path before optimization, None on failure.
        post_opt_cost: Cost after optimization, None on failure.
        elapsed_to_first_path: Seconds until the first goal pose was inserted.
        iterations: Outer iterations run.
        raw_path: Path before optimization.
        optimized: True if the optimizer shortened the path.
        cost_history: Best goal cost after every improvement.
        nodes: Tree size at the end of the run.
        total_time: Seconds including optimization.
        tree: Final tree, for rendering and checks.
    """

    goal_found: bool
    path: List[Sample] = field(default_factory=list)
    pre_opt_cost: Optional[float] = None
    post_opt_cost: Optional[float] = None
    elapsed_to_first_path: float = 0.0
    iterations: int = 0
    raw_path: List[Sample] = field(default_factory=list)
    optimized: bool = False
    cost_history: List[float] = field(default_factory=list)
    nodes: int = 0
    total_time: float = 0.0
    tree: Optional[Tree] = field(default=None, repr=False)


def random_sample(scenario: Scenario, rng: np.random.Generator) -> Pose:
    """
    Uniform pose over the scenario bounds, obstacles included.

    Args:
        scenario: Scenario giving the bounds.
        rng: Generator to draw from; draws x, y and then theta.

    Returns:
        The sampled pose.
    """
    b = scenario.bounds
    x = rng.uniform(b.x_min, b.x_max)
    y = rng.uniform(b.y_min, b.y_max)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    return Pose(float(x), float(y), float(theta))


def is_near(a: Pose, b: Pose, gfdist: float, gfangle: float) -> bool:
    """
    True if two poses are within the distance and heading tolerances.

    Args:
        a: First pose.
        b: Second pose.
        gfdist: Strict bound on the Euclidean distance in meters.
        gfangle: Strict bound on the circular heading difference in radians.
    """
    return (
        math.hypot(a.x - b.x, a.y - b.y) < gfdist
        and heading_diff(a.theta, b.theta) < gfangle
    )


def edge_lower_bound(a: Pose, b: Pose, turning_radius: float) -> float:
    """
    Cheap lower bound on the Reeds-Shepp distance between two poses.

    A path is never shorter than the straight line, and turning by an angle
    takes at least the turning radius times that angle.

    Args:
        a: Start pose.
        b: Goal pose.
        turning_radius: Turning radius in meters.

    Returns:
        Bound in meters, at most rs_distance(a, b, turning_radius).
    """
    return max(
        math.hypot(a.x - b.x, a.y - b.y),
        turning_radius * heading_diff(a.theta, b.theta),
    ) - BOUND_SLACK


def _arriving_direction(path: RSPath) -> Direction:
    return path.segments[-1].direction if path.segments else Direction.NONE


class AcceleratedRRTStar:
    """
    RRT* with per-iteration goal expansion over Reeds-Shepp curves.

    A planner instance owns a mutable tree and a seeded generator; use one
    instance per run.

    Attributes:
        scenario: Scenario being solved.
        car: Car model.
        config: Planner parameters.
        tree: Search tree rooted at p_init.

    Example:
        >>> planner = AcceleratedRRTStar(scenario, car, PlannerConfig(rng_seed=7))
        >>> result = planner.plan()
        >>> result.goal_found
        True
    """

    def __init__(self, scenario: Scenario, car: Car, config: Optional[PlannerConfig] = None) -> None:
        """
        Initialize the planner.

        Args:
            scenario: Scenario to solve.
            car: Car model.
            config: Planner parameters, defaults to PlannerConfig().

        Raises:
            InvalidScenarioError: If the scenario violates an invariant.
        """
        scenario.validate(car)

        self._scenario = scenario
        self._car = car
        self._config = config or PlannerConfig()
        self._radius = car.turning_radius
        self._rng = np.random.default_rng(self._config.rng_seed)

        nn_config = NNConfig(
            iystep=self._config.iystep,
            y_min=scenario.bounds.y_min,
            y_max=scenario.bounds.y_max,
            cost_mode=self._config.nn_cost,
            turning_radius=self._radius,
        )
        self._tree = Tree(scenario.p_init, nn_config, self._radius, grid_cell=self._config.gfdist)
        self._goal_nodes: List[Node] = []

        logger.debug(
            f"Planner ready for scenario {scenario.name or '<unnamed>'} "
            f"(seed {self._config.rng_seed}, nn {self._config.nn_cost.value}, "
            f"opt {self._config.opt_mode})"
        )

    @property
    def scenario(self) -> Scenario:
        return self._scenario

    @property
    def car(self) -> Car:
        return self._car

    @property
    def config(self) -> PlannerConfig:
        return self._config

    @property
    def tree(self) -> Tree:
        return self._tree

    def random_sample(self) -> Pose:
        """Draw the next random pose from the planner's generator."""
        return random_sample(self._scenario, self._rng)

    def is_near(self, a: Pose, b: Pose) -> bool:
        return is_near(a, b, self._config.gfdist, self._config.gfangle)

    def steer(self, a: Pose, b: Pose) -> List[Sample]:
        """Sampled poses of the Reeds-Shepp curve from a to b, both included."""
        return rs_sample(rs_path(a, b, self._radius), self._config.steer_step)

    def _sweep_free(self, samples: Sequence[Sample]) -> bool:
        return not collide_path(
            (pose for pose, _ in samples[1:]), self._car, self._scenario.obstacles
        )

    def connect(self, ns: Node, nns: Sequence[Node]) -> bool:
        """
        Attach a new node under the cheapest candidate it can reach.

        Candidates are tried in order of ccost plus Reeds-Shepp edge cost,
        earlier candidates first on ties, and the first one whose steered
        path is collision-free becomes the parent.

        Args:
            ns: Node not yet in the tree.
            nns: Candidate parents already in the tree.

        Returns:
            True if ns was attached; False leaves the tree unchanged.
        """
        # Best-first over lower bounds: entries are (key, exact, order, edge)
        # and an exact entry is only taken once no lower bound is smaller.
        queue: List[Tuple[float, int, int, Optional[RSPath]]] = []
        for order, candidate in enumerate(nns):
            bound = candidate.ccost + edge_lower_bound(candidate.pose, ns.pose, self._radius)
            queue.append((bound, 0, order, None))
        heapq.heapify(queue)

        while queue:
            key, exact, order, edge = heapq.heappop(queue)
            candidate = nns[order]
            if not exact:
                edge = rs_path(candidate.pose, ns.pose, self._radius)
                heapq.heappush(queue, (candidate.ccost + edge.total_length, 1, order, edge))
                continue
            samples = rs_sample(edge, self._config.steer_step)
            if self._sweep_free(samples):
                self._tree.attach(ns, candidate, key, _arriving_direction(edge))
                return True
        return False

    def rewire(self, ns: Node, nns: Sequence[Node]) -> int:
        """
        Re-parent candidates under ns when that lowers their cost.

        Args:
            ns: Node in the tree.
            nns: Nodes to try.

        Returns:
            Number of nodes re-parented.
        """
        rewired = 0
        for n in nns:
            if n is ns or n is ns.parent:
                continue
            if ns.ccost + edge_lower_bound(ns.pose, n.pose, self._radius) >= n.ccost - REWIRE_EPS:
                continue
            edge = rs_path(ns.pose, n.pose, self._radius)
            new_cost = ns.ccost + edge.total_length
            if new_cost >= n.ccost - REWIRE_EPS:
                continue
            if not self._sweep_free(rs_sample(edge, self._config.steer_step)):
                continue
            self._tree.reparent(n, ns, new_cost, _arriving_direction(edge))
            rewired += 1
        return rewired

    def _note_goal(self, node: Node) -> bool:
        if self.is_near(node.pose, self._scenario.p_goal):
            self._goal_nodes.append(node)
            return True
        return False

    def duplicate_of(self, pose: Pose) -> Optional[Node]:
        """
        Tree node that IsNear treats as the same pose, if any.

        Args:
            pose: Pose about to be inserted.

        Returns:
            The earliest such node, or None.
        """
        for node in self._tree.nodes_within(pose, self._config.gfdist):
            if heading_diff(node.pose.theta, pose.theta) < self._config.gfangle:
                return node
        return None

    def _extend(self) -> List[Node]:
        """Steer the nearest node toward a random sample; return inserted nodes."""
        sample = self.random_sample()
        pn = self._tree.index.nearest_with_cost(sample)
        added = []
        for pose, _ in self.steer(pn.pose, sample)[1:]:
            if collide_pose(pose, self._car, self._scenario.obstacles):
                break
            existing = self.duplicate_of(pose)
            if existing is not None:
                pn = existing
                continue
            ns = Node(pose=pose)
            nns = [pn] + [n for n in self._tree.index.near_nodes(pose, self._config.near_dist)
                          if n is not pn]
            if not self.connect(ns, nns):
                break
            self.rewire(ns, nns)
            added.append(ns)
            if self._note_goal(ns) and self._config.stop_at_first_goal:
                break
            pn = ns
        return added

    def _expand_toward_goal(self, start: Node) -> None:
        """Append the collision-free prefix of the curve from start to the goal."""
        curve = rs_path(start.pose, self._scenario.p_goal, self._radius)
        samples = rs_sample(curve, self._config.steer_step)
        # consecutive samples are joined by a piece of one optimal curve,
        # so the arc length along it is the edge cost
        lengths = rs_sample_lengths(curve, self._config.steer_step)
        pn = start
        for (pose, direction), length in zip(samples[1:], lengths[1:]):
            if collide_pose(pose, self._car, self._scenario.obstacles):
                break
            if self.duplicate_of(pose) is not None:
                break
            ns = self._tree.attach(Node(pose=pose), pn, start.ccost + length, direction)
            pn = ns
            if self._note_goal(ns) and self._config.stop_at_first_goal:
                return

    def _best_goal(self) -> Optional[Node]:
        if not self._goal_nodes:
            return None
        return min(self._goal_nodes, key=lambda node: (node.ccost, node.node_id))

    def _goal_found(self) -> bool:
        return bool(self._goal_nodes) and self._config.stop_at_first_goal

    def plan(self) -> PlanResult:
        """
        Run the planner until a goal pose is found or the budget runs out.

        Returns:
            The plan result; goal_found is False on timeout.
        """
        cfg = self._config
        start = time.perf_counter()
        p_init, p_goal = self._scenario.p_init, self._scenario.p_goal
        logger.info(
            f"Planning {self._scenario.name or 'scenario'} with seed {cfg.rng_seed}, "
            f"tmax {cfg.tmax} s"
        )

        if self.is_near(p_init, p_goal):
            logger.info("Start pose is already near the goal")
            path = [(p_init, Direction.NONE)]
            return PlanResult(
                goal_found=True, path=path, pre_opt_cost=0.0, post_opt_cost=0.0,
                raw_path=list(path), cost_history=[0.0], nodes=len(self._tree),
                total_time=time.perf_counter() - start, tree=self._tree,
            )

        iterations = 0
        first_path_time: Optional[float] = None
        cost_history: List[float] = []
        while not self._goal_found():
            if cfg.max_iterations is not None and iterations >= cfg.max_iterations:
                break
            if time.perf_counter() - start >= cfg.tmax:
                break
            iterations += 1

            added = self._extend()
            if not self._goal_found():
                for node in added:
                    self._expand_toward_goal(node)
                    if self._goal_found():
                        break

            best = self._best_goal()
            if best is not None:
                if first_path_time is None:
                    first_path_time = time.perf_counter() - start
                    logger.info(
                        f"Goal reached after {iterations} iterations "
                        f"({first_path_time:.3f} s, {len(self._tree)} nodes)"
                    )
                if not cost_history or best.ccost < cost_history[-1]:
                    cost_history.append(best.ccost)
            if iterations % 1000 == 0:
                logger.debug(f"Iteration {iterations}: {len(self._tree)} nodes")

        best = self._best_goal()
        if best is None:
            elapsed = time.perf_counter() - start
            logger.info(f"No path after {iterations} iterations ({elapsed:.3f} s)")
            return PlanResult(
                goal_found=False, elapsed_to_first_path=elapsed, iterations=iterations,
                nodes=len(self._tree), total_time=elapsed, tree=self._tree,
            )

        raw_path = self._tree.expand_path(self._tree.path_to(best), cfg.steer_step)
        pre_cost = path_cost(raw_path, self._radius)
        optimizer = create_optimizer(
            cfg.opt_mode, self._car, self._scenario.obstacles, cfg.steer_step
        )
        result = optimizer.optimize(raw_path)
        post_cost = result.cost if result.improved else pre_cost

        return PlanResult(
            goal_found=True,
            path=result.path,
            pre_opt_cost=pre_cost,
            post_opt_cost=post_cost,
            elapsed_to_first_path=first_path_time,
            iterations=iterations,
            raw_path=raw_path,
            optimized=result.improved,
            cost_history=cost_history,
            nodes=len(self._tree),
            total_time=time.perf_counter() - start,
            tree=self._tree,
        )


def plan(scenario: Scenario, car: Car, config: Optional[PlannerConfig] = None) -> PlanResult:
    """
    Solve a scenario with a fresh planner.

    Args:
        scenario: Scenario to solve.
        car: Car model.
        config: Planner parameters.

    Returns:
        The plan result.
    """
    return AcceleratedRRTStar(scenario, car, config).plan()
