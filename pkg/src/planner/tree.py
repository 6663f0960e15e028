"""
Search tree of the planner: nodes linked by parent pointers, plus the
nearest-neighbor index that holds every node.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from src.geometry.collision import ObstacleSet, collide_pose
from src.geometry.primitives import Car, Pose
from src.search.nn_index import NNConfig, NNIndex
from src.search.pose_grid import PoseGrid
from src.steering.reeds_shepp import Direction, rs_distance, rs_path, rs_sample

logger = logging.getLogger(__name__)

CCOST_TOLERANCE = 1e-6

# Cell size of the position grid used for short-range lookups, in meters.
GRID_CELL = 0.05

Sample = Tuple[Pose, Direction]


@dataclass(eq=False)
class Node:
    """
    Pose in the tree with its parent link and cumulative cost.

    Attributes:
        pose: Pose of the node.
        parent: Parent node, None for the root and for unattached nodes.
        children: Child nodes.
        ccost: Cumulative Reeds-Shepp cost from the root, in meters.
        direction: Drive direction of the edge arriving at this node.
        node_id: Insertion order in the tree, -1 until attached.
    """

    pose: Pose
    parent: Optional["Node"] = None
    children: List["Node"] = field(default_factory=list)
    ccost: float = 0.0
    direction: Direction = Direction.NONE
    node_id: int = -1

    def __repr__(self) -> str:
        return (
            f"Node(id={self.node_id}, pose=({self.pose.x:.3f}, {self.pose.y:.3f}, "
            f"{self.pose.theta:.3f}), ccost={self.ccost:.3f})"
        )


class Tree:
    """
    Rooted tree T = (root, V, E) with E given by the parent links.

    Every node in V is also stored in the attached NNIndex.

    Attributes:
        root: Node at the initial pose.
        nodes: All nodes in insertion order.
        index: Nearest-neighbor index over the nodes.
        turning_radius: Radius used for edge costs and re-steering.
    """

    def __init__(
        self,
        root_pose: Pose,
        nn_config: NNConfig,
        turning_radius: float,
        grid_cell: float = GRID_CELL,
    ) -> None:
        """
        Create a tree holding only the root.

        Args:
            root_pose: Initial pose.
            nn_config: Shape and cost of the nearest-neighbor index.
            turning_radius: Turning radius for edge costs.
            grid_cell: Cell size of the position grid behind nodes_within.

        Raises:
            ValueError: If turning_radius is not positive.
        """
        if not turning_radius > 0:
            raise ValueError(f"turning_radius must be positive, got {turning_radius}")

        self._turning_radius = turning_radius
        self._index: NNIndex[Node] = NNIndex(nn_config)
        self._grid: PoseGrid[Node] = PoseGrid(grid_cell)
        self._nodes: List[Node] = []
        self._root = Node(pose=root_pose)
        self._register(self._root)

    @property
    def root(self) -> Node:
        return self._root

    @property
    def nodes(self) -> List[Node]:
        return self._nodes

    @property
    def index(self) -> NNIndex[Node]:
        return self._index

    @property
    def turning_radius(self) -> float:
        return self._turning_radius

    def __len__(self) -> int:
        return len(self._nodes)

    def __iter__(self) -> Iterator[Node]:
        return iter(self._nodes)

    def _register(self, node: Node) -> None:
        node.node_id = len(self._nodes)
        self._nodes.append(node)
        self._index.add(node)
        self._grid.add(node)

    def nodes_within(self, pose: Pose, radius: float) -> List[Node]:
        """Nodes whose position is strictly closer than radius to the pose."""
        return self._grid.within(pose, radius)

    def attach(self, node: Node, parent: Node, ccost: float, direction: Direction) -> Node:
        """
        Link a new node under a parent and add it to the index.

        Args:
            node: Node not yet in the tree.
            parent: Node already in the tree.
            ccost: Cumulative cost of the new node.
            direction: Drive direction of the arriving edge.

        Returns:
            The attached node.

        Raises:
            ValueError: If the node is already attached.
        """
        if node.node_id >= 0:
            raise ValueError(f"{node!r} is already in the tree")
        node.parent = parent
        node.ccost = ccost
        node.direction = direction
        parent.children.append(node)
        self._register(node)
        return node

    def reparent(self, node: Node, parent: Node, ccost: float, direction: Direction) -> None:
        """
        Move a node under a new parent and shift its subtree costs.

        Args:
            node: Node to move.
            parent: New parent, not in the subtree of node.
            ccost: New cumulative cost of node.
            direction: Drive direction of the new arriving edge.
        """
        delta = ccost - node.ccost
        if node.parent is not None:
            node.parent.children.remove(node)
        node.parent = parent
        node.direction = direction
        parent.children.append(node)

        node.ccost = ccost
        stack = list(node.children)
        while stack:
            child = stack.pop()
            child.ccost += delta
            stack.extend(child.children)

    def path_to(self, node: Node) -> List[Node]:
        """
        Nodes from the root to a node, following parent links.

        Args:
            node: Target node.

        Returns:
            Node list starting at the root and ending at node.
        """
        chain = []
        current: Optional[Node] = node
        while current is not None:
            chain.append(current)
            current = current.parent
        chain.reverse()
        return chain

    def expand_path(self, nodes: Sequence[Node], step: float) -> List[Sample]:
        """
        Dense pose sequence obtained by re-steering every edge.

        Args:
            nodes: Consecutive tree nodes, parent before child.
            step: Sampling step along each edge in meters.

        Returns:
            (pose, direction) pairs; the first pose has direction NONE.
        """
        if not nodes:
            return []
        dense: List[Sample] = [(nodes[0].pose, Direction.NONE)]
        for a, b in zip(nodes, nodes[1:]):
            samples = rs_sample(rs_path(a.pose, b.pose, self._turning_radius), step)
            dense.extend(samples[1:])
        return dense

    def integrity_errors(
        self,
        car: Optional[Car] = None,
        obstacles: Optional[ObstacleSet] = None
    ) -> List[str]:
        """
        List every violated tree invariant.

        Checks root properties, parent/children consistency, acyclicity,
        cumulative costs, index membership and, when car and obstacles are
        given, that every node is collision-free.

        Returns:
            Human-readable descriptions, empty if the tree is consistent.
        """
        errors = []
        root = self._root
        if root.parent is not None or root.ccost != 0.0 or root.direction is not Direction.NONE:
            errors.append("root must have no parent, ccost 0 and direction NONE")

        members = {id(node) for node in self._nodes}
        for node in self._nodes:
            for child in node.children:
                if child.parent is not node:
                    errors.append(f"{child!r} listed as child of {node!r} but has another parent")
            if node is root:
                continue
            parent = node.parent
            if parent is None:
                errors.append(f"{node!r} has no parent")
                continue
            if id(parent) not in members:
                errors.append(f"{node!r} has a parent outside the tree")
            if sum(1 for c in parent.children if c is node) != 1:
                errors.append(f"{node!r} missing from the children of {parent!r}")
            expected = parent.ccost + rs_distance(parent.pose, node.pose, self._turning_radius)
            if abs(node.ccost - expected) > CCOST_TOLERANCE:
                errors.append(f"{node!r} ccost differs from edge sum {expected:.6f}")

            steps = 0
            current = node
            while current.parent is not None and steps <= len(self._nodes):
                current = current.parent
                steps += 1
            if current is not root:
                errors.append(f"{node!r} does not reach the root (cycle or detached)")

            if car is not None and obstacles is not None and collide_pose(node.pose, car, obstacles):
                errors.append(f"{node!r} collides")

        indexed = {id(node) for node in self._index}
        if len(self._index) != len(self._nodes) or indexed != members:
            errors.append("index membership differs from the node set")
        return errors
