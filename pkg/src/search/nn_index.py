"""
Nearest-neighbor index that buckets tree nodes along the y-axis.

Queries start in the bucket of the query and widen ring by ring. A bucket
that has not been examined yet lies at least the distance from the query to
its nearest edge away in y, and every supported cost is bounded below by
|Δy|, so the search stops as soon as the best cost is below that gap.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Generic, Iterator, List, Optional, Protocol, Tuple, TypeVar

from src.errors import IndexEmptyError
from src.geometry.primitives import Pose
from src.steering.reeds_shepp import rs_distance

logger = logging.getLogger(__name__)


class CostMode(str, Enum):
    """Cost used to rank nodes against a query pose."""

    EUCLIDEAN = "euclidean"
    REEDS_SHEPP = "rs"
    REEDS_SHEPP_FLAT_HEADING = "rs-flat"


class HasPose(Protocol):
    """Anything stored in the index: it only needs a pose."""

    pose: Pose


NodeT = TypeVar("NodeT", bound=HasPose)
Entry = Tuple[int, NodeT]


def node_cost(node_pose: Pose, query: Pose, cost_mode: CostMode, turning_radius: float) -> float:
    """
    Cost from a stored node to a query pose.

    Args:
        node_pose: Pose of the stored node.
        query: Query pose.
        cost_mode: Which cost to evaluate.
        turning_radius: Turning radius for the Reeds-Shepp costs.

    Returns:
        Cost in meters.
    """
    if cost_mode is CostMode.EUCLIDEAN:
        return math.hypot(node_pose.x - query.x, node_pose.y - query.y)
    if cost_mode is CostMode.REEDS_SHEPP:
        return rs_distance(node_pose, query, turning_radius)
    return rs_distance(Pose(node_pose.x, node_pose.y, query.theta), query, turning_radius)


@dataclass(frozen=True)
class NNConfig:
    """
    Shape and cost of the index.

    Attributes:
        iystep: Bucket height in meters.
        y_min: Lower y extent of the index.
        y_max: Upper y extent of the index.
        cost_mode: Default cost for queries.
        turning_radius: Turning radius used by the Reeds-Shepp costs.
    """

    iystep: float
    y_min: float
    y_max: float
    cost_mode: CostMode = CostMode.EUCLIDEAN
    turning_radius: float = 1.0

    def __post_init__(self) -> None:
        if not self.iystep > 0:
            raise ValueError(f"iystep must be positive, got {self.iystep}")
        if not self.y_max > self.y_min:
            raise ValueError(f"y_max {self.y_max} must exceed y_min {self.y_min}")
        if not self.turning_radius > 0:
            raise ValueError(f"turning_radius must be positive, got {self.turning_radius}")
        object.__setattr__(self, "cost_mode", CostMode(self.cost_mode))

    @property
    def iysize(self) -> int:
        """Number of buckets, ceil((y_max - y_min) / iystep), at least 1."""
        return max(1, math.ceil((self.y_max - self.y_min) / self.iystep))


class NNIndex(Generic[NodeT]):
    """
    Array of node lists indexed by floor((y - y_min) / iystep).

    Out-of-range y values go to the boundary bucket. Ties between equally
    distant nodes go to the node inserted first.

    Attributes:
        config: Index shape and default cost.

    Example:
        >>> index = NNIndex(NNConfig(iystep=1.0, y_min=0.0, y_max=5.0))
        >>> index.add(node)
        >>> index.nearest(Pose(1.0, 2.0, 0.0)) is node
        True
    """

    def __init__(self, config: NNConfig) -> None:
        """
        Initialize an empty index.

        Args:
            config: Index shape and default cost.
        """
        self._config = config
        self._buckets: List[List[Entry]] = [[] for _ in range(config.iysize)]
        self._count = 0

        logger.debug(
            f"NNIndex initialized with {config.iysize} buckets of {config.iystep} m, "
            f"cost {config.cost_mode.value}"
        )

    @property
    def config(self) -> NNConfig:
        """Get the index configuration."""
        return self._config

    @property
    def bucket_sizes(self) -> List[int]:
        """Number of nodes in every bucket."""
        return [len(bucket) for bucket in self._buckets]

    def __len__(self) -> int:
        return self._count

    def __iter__(self) -> Iterator[NodeT]:
        entries = sorted(
            (entry for bucket in self._buckets for entry in bucket),
            key=lambda entry: entry[0],
        )
        return iter(node for _, node in entries)

    def bucket_of(self, y: float) -> int:
        """
        Bucket index of a y coordinate, clamped to the index.

        Args:
            y: Y coordinate in meters.

        Returns:
            Index in [0, IYSIZE - 1].
        """
        raw = math.floor((y - self._config.y_min) / self._config.iystep)
        return min(max(raw, 0), len(self._buckets) - 1)

    def bucket_contents(self, bucket: int) -> List[NodeT]:
        """Nodes stored in one bucket, in insertion order."""
        return [node for _, node in self._buckets[bucket]]

    def add(self, node: NodeT) -> None:
        """
        Insert a node into the bucket of its y coordinate.

        Args:
            node: Node to insert.
        """
        bucket = self.bucket_of(node.pose.y)
        raw = math.floor((node.pose.y - self._config.y_min) / self._config.iystep)
        if raw < -1 or raw > len(self._buckets):
            logger.warning(
                f"Node at y={node.pose.y:.3f} is far outside "
                f"[{self._config.y_min}, {self._config.y_max}], clamped to bucket {bucket}"
            )
        self._buckets[bucket].append((self._count, node))
        self._count += 1

    def nearest(self, query: Pose) -> NodeT:
        """
        Node with the smallest Euclidean distance to the query.

        Args:
            query: Query pose.

        Returns:
            The nearest node.

        Raises:
            IndexEmptyError: If the index is empty.
        """
        return self.nearest_with_cost(query, CostMode.EUCLIDEAN)

    def nearest_with_cost(
        self,
        query: Pose,
        cost_mode: Optional[CostMode] = None,
        turning_radius: Optional[float] = None
    ) -> NodeT:
        """
        Node with the smallest cost to the query.

        Args:
            query: Query pose.
            cost_mode: Cost to minimize; defaults to the configured one.
            turning_radius: Turning radius for the Reeds-Shepp costs;
                defaults to the configured one.

        Returns:
            The node minimizing the cost, earliest inserted on ties.

        Raises:
            IndexEmptyError: If the index is empty.
        """
        if self._count == 0:
            raise IndexEmptyError("index empty")

        mode = CostMode(cost_mode) if cost_mode is not None else self._config.cost_mode
        radius = turning_radius if turning_radius is not None else self._config.turning_radius
        cost = self._cost_function(query, mode, radius)

        home = self.bucket_of(query.y)
        best: Optional[NodeT] = None
        best_cost = math.inf
        best_seq = math.inf
        ring = 0
        while True:
            for bucket in self._ring(home, ring):
                for seq, node in self._buckets[bucket]:
                    c = cost(node.pose)
                    if c < best_cost or (c == best_cost and seq < best_seq):
                        best, best_cost, best_seq = node, c, seq
            ring += 1
            gap = self._unexamined_gap(query.y, home, ring)
            if best_cost < gap or gap == math.inf:
                break

        assert best_cost <= gap, "ring expansion stopped before the bound held"
        return best

    def near_nodes(self, query: Pose, dist: float) -> List[NodeT]:
        """
        All nodes whose cost to the query is below a distance.

        Args:
            query: Query pose.
            dist: Exclusive upper bound on the cost, in meters.

        Returns:
            Matching nodes in insertion order.
        """
        cost = self._cost_function(query, self._config.cost_mode, self._config.turning_radius)
        home = self.bucket_of(query.y)
        found: List[Entry] = []
        ring = 0
        while True:
            for bucket in self._ring(home, ring):
                for seq, node in self._buckets[bucket]:
                    if cost(node.pose) < dist:
                        found.append((seq, node))
            ring += 1
            if self._unexamined_gap(query.y, home, ring) >= dist:
                break

        found.sort(key=lambda entry: entry[0])
        return [node for _, node in found]

    def _cost_function(
        self, query: Pose, cost_mode: CostMode, turning_radius: float
    ) -> Callable[[Pose], float]:
        if cost_mode is CostMode.EUCLIDEAN:
            qx, qy = query.x, query.y
            return lambda pose: math.hypot(pose.x - qx, pose.y - qy)
        return lambda pose: node_cost(pose, query, cost_mode, turning_radius)

    def _ring(self, home: int, ring: int) -> List[int]:
        """Buckets at exactly `ring` steps from home that exist."""
        if ring == 0:
            return [home]
        buckets = []
        if home - ring >= 0:
            buckets.append(home - ring)
        if home + ring < len(self._buckets):
            buckets.append(home + ring)
        return buckets

    def _unexamined_gap(self, y: float, home: int, ring: int) -> float:
        """Lower bound of |Δy| to any node in buckets at `ring` steps or more."""
        y_min = self._config.y_min
        step = self._config.iystep
        gap = math.inf
        if home - ring >= 0:
            gap = min(gap, y - (y_min + (home - ring + 1) * step))
        if home + ring < len(self._buckets):
            gap = min(gap, y_min + (home + ring) * step - y)
        return max(gap, 0.0)
