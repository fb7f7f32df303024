"""
Truncated universal covers.

The depth-r unfolding of g at x has one node per non-backtracking walk of
length at most r starting at x; a walk's parent is the walk without its last
step. Nodes are stored breadth first with their endpoint in g as label.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Tuple

from graphs.core import Graph
from invariants.refine import exact_joint_refine
from models.errors import GraphInputError, ResourceGuardError
from models.types import DEFAULT_GUARD_NODES, MAX_ORDER, Vertex


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnfoldingTree:
    root: Vertex
    depth: int
    labels: Tuple[int, ...]
    parents: Tuple[int, ...]
    levels: Tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @cached_property
    def _children(self) -> Tuple[Tuple[int, ...], ...]:
        children: list[list[int]] = [[] for _ in self.labels]
        for node, parent in enumerate(self.parents):
            if parent >= 0:
                children[parent].append(node)
        return tuple(tuple(c) for c in children)

    def children(self, node: int) -> Tuple[int, ...]:
        return self._children[node]

    def walk(self, node: int) -> Tuple[int, ...]:
        """Base-graph walk represented by `node`, starting at the root vertex."""
        steps = []
        while node >= 0:
            steps.append(self.labels[node])
            node = self.parents[node]
        return tuple(reversed(steps))

    def to_graph(self) -> Graph:
        if self.node_count > MAX_ORDER:
            raise GraphInputError(f"Unfolding has {self.node_count} nodes, above the vertex cap")
        return Graph.from_edges(
            self.node_count,
            [(parent, node) for node, parent in enumerate(self.parents) if parent >= 0],
        )


@dataclass(frozen=True)
class AhuCode:
    """Canonical code of a rooted tree: sorted bracketed child codes"""
    code: bytes

    def __str__(self) -> str:
        return self.code.decode("ascii")


class ColorCoverCheck(NamedTuple):
    colors_equal: bool
    unfoldings_equal: bool


def unfold(g: Graph, x: Vertex, r: int, guard_nodes: int = DEFAULT_GUARD_NODES) -> UnfoldingTree:
    if not 0 <= x < g.order:
        raise GraphInputError(f"Vertex {x} out of range for order {g.order}")
    if r < 0:
        raise GraphInputError(f"Depth must be non-negative, got {r}")

    labels = [x]
    parents = [-1]
    levels = [0]
    frontier = [0]
    for level in range(1, r + 1):
        grown = []
        for node in frontier:
            parent = parents[node]
            came_from = labels[parent] if parent >= 0 else -1
            for u in g.neighbors(labels[node]):
                if u == came_from:
                    continue
                if len(labels) >= guard_nodes:
                    raise ResourceGuardError(level, guard_nodes)
                labels.append(u)
                parents.append(node)
                levels.append(level)
                grown.append(len(labels) - 1)
        frontier = grown
        if not frontier:
            break
    logger.debug("Unfolded vertex %d to depth %d: %d nodes", x, r, len(labels))
    return UnfoldingTree(root=x, depth=r, labels=tuple(labels), parents=tuple(parents), levels=tuple(levels))


def ahu_code(t: UnfoldingTree) -> AhuCode:
    codes: list[bytes] = [b""] * t.node_count
    for node in range(t.node_count - 1, -1, -1):
        inner = b"".join(sorted(codes[child] for child in t.children(node)))
        codes[node] = b"(" + inner + b")"
    return AhuCode(codes[0])


def count_nonbacktracking_walks(g: Graph, x: Vertex, r: int) -> int:
    """Walks of length <= r from x that never reverse their last step."""
    total = 1
    # ending[(a, b)]: walks of the current length whose last step is a -> b
    ending = {(x, b): 1 for b in g.neighbors(x)}
    for _ in range(r):
        total += sum(ending.values())
        grown: dict[Tuple[int, int], int] = {}
        for (a, b), count in ending.items():
            for c in g.neighbors(b):
                if c != a:
                    grown[(b, c)] = grown.get((b, c), 0) + count
        ending = grown
    return total


def check_color_cover(
    g: Graph,
    x: Vertex,
    h: Graph,
    y: Vertex,
    r: int,
    guard_nodes: int = DEFAULT_GUARD_NODES,
) -> ColorCoverCheck:
    """Compare round-r colors (exact joint mode) with depth-r unfoldings."""
    left = unfold(g, x, r, guard_nodes)
    right = unfold(h, y, r, guard_nodes)
    joint = exact_joint_refine([g, h], rounds=r)
    return ColorCoverCheck(
        colors_equal=joint.colors[0][x] == joint.colors[1][y],
        unfoldings_equal=ahu_code(left) == ahu_code(right),
    )
