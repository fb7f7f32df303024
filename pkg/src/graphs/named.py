import re

from graphs.core import Graph, disjoint_union
from models.errors import GraphInputError


_NAMED_PATTERN = re.compile(r"^(\d*)([CPKES])(\d+)$")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphInputError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path on n vertices (P5 has five vertices and four edges)."""
    if n < 1:
        raise GraphInputError(f"A path needs at least 1 vertex, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j)])


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def star(n: int) -> Graph:
    """Star on n vertices with center 0."""
    if n < 1:
        raise GraphInputError(f"A star needs at least 1 vertex, got {n}")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def bowtie() -> Graph:
    """Two triangles sharing vertex 2."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


_FAMILIES = {"C": cycle, "P": path, "K": complete, "E": empty, "S": star}


def named_graph(token: str) -> Graph:
    """
    Build a graph from a short name.

    Accepts C<n>, P<n>, K<n>, E<n> (edgeless), S<n> (star), an optional
    multiplicity prefix such as 2C3, and `bowtie`.
    """
    if token.lower() == "bowtie":
        return bowtie()
    match = _NAMED_PATTERN.match(token)
    if not match:
        raise GraphInputError(f"Unknown graph name: {token}")
    copies = int(match.group(1)) if match.group(1) else 1
    if copies < 1:
        raise GraphInputError(f"Multiplicity must be positive in {token}")
    base = _FAMILIES[match.group(2)](int(match.group(3)))
    return base if copies == 1 else disjoint_union([base] * copies)


def is_named_graph(token: str) -> bool:
    return token.lower() == "bowtie" or _NAMED_PATTERN.match(token) is not None
