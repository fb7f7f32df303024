from dataclasses import dataclass
from typing import Optional

from graphs.core import Graph
from invariants.refine import stable_coloring


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """
    Minimal upper-triangle adjacency string over the search space.

    `code` holds the bits x(0,1), x(0,2), x(1,2), x(0,3), ... with x(0,1) as
    the most significant bit, the same order graph6 uses.
    """
    order: int
    code: int

    def to_graph(self) -> Graph:
        n = self.order
        total = n * (n - 1) // 2
        edges = []
        k = 0
        for j in range(1, n):
            for i in range(j):
                if self.code >> (total - 1 - k) & 1:
                    edges.append((i, j))
                k += 1
        return Graph.from_edges(n, edges)


def _twins(g: Graph, u: int, v: int) -> bool:
    return g.rows[u] & ~(1 << v) == g.rows[v] & ~(1 << u)


def canonical_labeling(g: Graph) -> list[int]:
    """
    Permutation sending each vertex to its canonical position.

    Positions are grouped by the classes of the stable refinement coloring,
    classes ordered by color digest; within that space the labeling with the
    lexicographically smallest upper-triangle string wins. Candidates are
    pruned as soon as their prefix exceeds the best string found, and twin
    vertices of one class are tried once per level.
    """
    n = g.order
    if n <= 1:
        return list(range(n))

    by_color: dict[bytes, list[int]] = {}
    for v, color in enumerate(stable_coloring(g).assignment):
        by_color.setdefault(color, []).append(v)
    cells = [by_color[c] for c in sorted(by_color)]
    cell_at = [idx for idx, cell in enumerate(cells) for _ in cell]

    best: Optional[list[int]] = None
    best_order: list[int] = []
    chosen: list[int] = []
    columns: list[int] = []
    used = [False] * n

    def search(j: int) -> None:
        nonlocal best, best_order
        if j == n:
            if best is None or columns < best:
                best = columns.copy()
                best_order = chosen.copy()
            return
        tried: list[int] = []
        for v in cells[cell_at[j]]:
            if used[v] or any(_twins(g, v, u) for u in tried):
                continue
            tried.append(v)
            column = 0
            row = g.rows[v]
            for i, u in enumerate(chosen):
                if row >> u & 1:
                    column |= 1 << (j - 1 - i)
            columns.append(column)
            if best is None or columns <= best[:j + 1]:
                chosen.append(v)
                used[v] = True
                search(j + 1)
                used[v] = False
                chosen.pop()
            columns.pop()

    search(0)
    perm = [0] * n
    for position, v in enumerate(best_order):
        perm[v] = position
    return perm


def canonical_form(g: Graph) -> CanonicalForm:
    perm = canonical_labeling(g)
    relabeled = g.relabel(perm)
    return CanonicalForm(order=g.order, code=upper_triangle_code(relabeled))


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def upper_triangle_code(g: Graph) -> int:
    code = 0
    for j in range(1, g.order):
        row = g.rows[j]
        for i in range(j):
            code = code << 1 | (row >> i & 1)
    return code


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.order == h.order and g.edge_count == h.edge_count and canonical_form(g) == canonical_form(h)
