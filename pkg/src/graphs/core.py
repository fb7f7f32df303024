from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from models.errors import GraphDomainError, GraphInputError, OrderOverflowError
from models.types import MAX_ORDER, BlockCutTree, Vertex, VertexSet


@dataclass(frozen=True)
class Graph:
    """
    Finite simple undirected graph on vertices 0..order-1.

    Row v is an integer whose bit u is set iff u and v are adjacent.
    """
    order: int
    rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order > MAX_ORDER:
            raise OrderOverflowError(self.order)
        if self.order < 0:
            raise GraphInputError(f"Negative order {self.order}")
        if len(self.rows) != self.order:
            raise GraphInputError(f"Expected {self.order} rows, got {len(self.rows)}")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphInputError(f"Row {v} references vertices beyond {self.order - 1}")
            if row >> v & 1:
                raise GraphInputError(f"Self-loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphInputError(f"Adjacency is not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]]) -> 'Graph':
        if order > MAX_ORDER:
            raise OrderOverflowError(order)
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphInputError(f"Edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise GraphInputError(f"Self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    def neighbors(self, v: Vertex) -> Iterator[int]:
        return _bits(self.rows[v])

    def degree(self, v: Vertex) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[Tuple[int, int]]:
        for v, row in enumerate(self.rows):
            for u in _bits(row >> (v + 1) << (v + 1)):
                yield v, u

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted(row.bit_count() for row in self.rows))

    def is_connected(self) -> bool:
        return self.order <= 1 or len(components(self)) == 1

    def relabel(self, perm: Sequence[int]) -> 'Graph':
        """Move vertex v to position perm[v]."""
        if sorted(perm) != list(range(self.order)):
            raise GraphInputError("Relabeling is not a permutation of the vertex set")
        rows = [0] * self.order
        for v, row in enumerate(self.rows):
            target = 0
            for u in _bits(row):
                target |= 1 << perm[u]
            rows[perm[v]] = target
        return Graph(self.order, tuple(rows))

    def __str__(self) -> str:
        return f"Graph(order={self.order}, edges={list(self.edges())})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_vertex(g: Graph, v: Vertex) -> None:
    if not 0 <= v < g.order:
        raise GraphInputError(f"Vertex {v} out of range for order {g.order}")


def components(g: Graph) -> list[VertexSet]:
    """Connected components, ordered by smallest vertex."""
    seen = 0
    result: list[VertexSet] = []
    for start in range(g.order):
        if seen >> start & 1:
            continue
        reached = 1 << start
        frontier = reached
        while frontier:
            grown = 0
            for v in _bits(frontier):
                grown |= g.rows[v]
            frontier = grown & ~reached
            reached |= frontier
        seen |= reached
        result.append(frozenset(_bits(reached)))
    return result


def delete_vertex(g: Graph, v: Vertex) -> Graph:
    """Vertex-deleted subgraph; vertices above v shift down by one."""
    _check_vertex(g, v)
    low_mask = (1 << v) - 1
    rows = []
    for u, row in enumerate(g.rows):
        if u == v:
            continue
        rows.append((row & low_mask) | (row >> (v + 1) << v))
    return Graph(g.order - 1, tuple(rows))


def delete_edge(g: Graph, u: Vertex, v: Vertex) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise GraphInputError(f"({u}, {v}) is not an edge")
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.order, tuple(rows))


def induced_subgraph(g: Graph, vertices: Iterable[Vertex]) -> Graph:
    """Subgraph induced on `vertices`, renumbered in increasing order."""
    chosen = sorted(set(vertices))
    for v in chosen:
        _check_vertex(g, v)
    position = {v: i for i, v in enumerate(chosen)}
    rows = []
    for v in chosen:
        row = 0
        for u in g.neighbors(v):
            if u in position:
                row |= 1 << position[u]
        rows.append(row)
    return Graph(len(chosen), tuple(rows))


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    total = sum(p.order for p in parts)
    if total > MAX_ORDER:
        raise OrderOverflowError(total)
    rows: list[int] = []
    offset = 0
    for part in parts:
        rows.extend(row << offset for row in part.rows)
        offset += part.order
    return Graph(total, tuple(rows))


def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph(g.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def eccentricity(g: Graph, source: Vertex) -> Optional[int]:
    """Largest BFS distance from source, or None if some vertex is unreachable."""
    dist = [-1] * g.order
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    if min(dist) < 0:
        return None
    return max(dist)


def diameter(g: Graph) -> int:
    if g.order == 0:
        raise GraphDomainError("Diameter of the order-0 graph is undefined")
    best = 0
    for v in range(g.order):
        ecc = eccentricity(g, v)
        if ecc is None:
            raise GraphDomainError("Diameter requires a connected graph")
        best = max(best, ecc)
    return best


def block_cut_tree(g: Graph) -> BlockCutTree:
    """
    Blocks and cut vertices by an iterative Hopcroft-Tarjan search.

    Isolated vertices form single-vertex blocks. Disconnected input yields the
    union of the block-cut trees of its components.
    """
    n = g.order
    disc = [-1] * n
    low = [0] * n
    timer = 0
    blocks: list[VertexSet] = []
    cut: set[int] = set()

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        if g.rows[root] == 0:
            blocks.append(frozenset({root}))
            continue

        root_children = 0
        edge_stack: list[Tuple[int, int]] = []
        stack: list[Tuple[int, int, Iterator[int]]] = [(root, -1, g.neighbors(root))]
        while stack:
            u, parent, pending = stack[-1]
            descended = False
            for w in pending:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, g.neighbors(w)))
                    descended = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if descended:
                continue

            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if p == root:
                root_children += 1
            if low[u] >= disc[p]:
                block: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    block.update((a, b))
                    if (a, b) == (p, u):
                        break
                blocks.append(frozenset(block))
                if p != root:
                    cut.add(p)
        if root_children >= 2:
            cut.add(root)

    blocks.sort(key=lambda b: (min(b), sorted(b)))
    incidence = tuple(
        (i, c) for i, block in enumerate(blocks) for c in sorted(block & cut)
    )
    leaves = tuple(block for block in blocks if len(block & cut) <= 1)
    return BlockCutTree(
        blocks=tuple(blocks),
        cut_vertices=frozenset(cut),
        incidence=incidence,
        leaf_blocks=leaves,
    )


def cut_vertices_by_deletion(g: Graph) -> frozenset[int]:
    """Vertices whose deletion increases the number of components."""
    base = len(components(g))
    return frozenset(
        v for v in range(g.order) if len(components(delete_vertex(g, v))) > base
    )
