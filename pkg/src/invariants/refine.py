"""
Color refinement.

Digest mode names every color by the BLAKE2b digest of the sorted multiset of
the previous-round colors of its neighbors, so colors can be compared across
graphs and processes without a shared renaming table. Exact mode refines a
disjoint union and renames colors synchronously after every round; it is the
ground truth the digest mode is checked against.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from graphs.core import Graph, disjoint_union
from invariants.digest import multiset_digest, tagged_digest
from models.errors import GraphDomainError, GraphInputError
from models.types import ColorId, CompareMode, Coloring, CrInvariant, Vertex


logger = logging.getLogger(__name__)

_PERSON = b"crdeck-refine"
INITIAL_COLOR: ColorId = tagged_digest(b"initial", _PERSON)


def next_colors(g: Graph, colors: Sequence[ColorId]) -> Tuple[ColorId, ...]:
    return tuple(
        multiset_digest((colors[u] for u in g.neighbors(v)), _PERSON)
        for v in range(g.order)
    )


def color_rounds(g: Graph, rounds: int) -> list[Tuple[ColorId, ...]]:
    """Colorings C^0 .. C^rounds."""
    current: Tuple[ColorId, ...] = (INITIAL_COLOR,) * g.order
    history = [current]
    for _ in range(rounds):
        current = next_colors(g, current)
        history.append(current)
    return history


def refine_to_stable(g: Graph) -> list[Coloring]:
    """
    Refine until the partition stops changing.

    Returns the colorings of rounds 0..R where R is the first round whose
    partition equals the partition of round R-1.
    """
    if g.order < 1:
        raise GraphDomainError("Refinement needs at least one vertex")
    current: Tuple[ColorId, ...] = (INITIAL_COLOR,) * g.order
    result = [Coloring(round=0, assignment=current)]
    while True:
        current = next_colors(g, current)
        coloring = Coloring(round=len(result), assignment=current)
        result.append(coloring)
        if coloring.class_count == result[-2].class_count:
            return result


def stable_coloring(g: Graph) -> Coloring:
    return refine_to_stable(g)[-1]


def cr_invariant(g: Graph, rounds: Optional[int] = None) -> CrInvariant:
    """Multiset of colors at round `rounds`, by default the order of g."""
    r = g.order if rounds is None else rounds
    colors = color_rounds(g, r)[-1]
    return CrInvariant.create(order=g.order, rounds=r, colors=colors)


def iterated_degree(g: Graph, x: Vertex) -> ColorId:
    """Round-2 color of x: the multiset of the degrees of its neighbors."""
    if not 0 <= x < g.order:
        raise GraphInputError(f"Vertex {x} out of range for order {g.order}")
    return color_rounds(g, 2)[2][x]


@dataclass(frozen=True)
class JointColoring:
    """Exact colors of several graphs refined together on their disjoint union"""
    rounds: int
    colors: Tuple[Tuple[int, ...], ...]

    def multiset(self, index: int) -> Counter:
        return Counter(self.colors[index])

    def color_set(self, index: int) -> frozenset[int]:
        return frozenset(self.colors[index])


def exact_joint_refine(gs: Sequence[Graph], rounds: Optional[int] = None) -> JointColoring:
    """
    Refine the disjoint union of `gs` with synchronous renaming.

    Without `rounds` the refinement stops at the first round whose partition
    equals the previous one. With `rounds` the coloring of that round is
    returned; rounds after stabilization keep the same classes.
    """
    union = disjoint_union(gs)
    colors = [0] * union.order
    reached = 0
    while rounds is None or reached < rounds:
        signatures = [tuple(sorted(colors[u] for u in union.neighbors(v))) for v in range(union.order)]
        rank = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        refined = [rank[sig] for sig in signatures]
        reached += 1
        stable = len(rank) == len(set(colors))
        colors = refined
        if stable:
            if rounds is not None:
                reached = rounds
            break

    per_graph = []
    offset = 0
    for g in gs:
        per_graph.append(tuple(colors[offset:offset + g.order]))
        offset += g.order
    return JointColoring(rounds=reached, colors=tuple(per_graph))


def cr_equivalent(g: Graph, h: Graph, mode: CompareMode = CompareMode.DIGEST) -> bool:
    if g.order != h.order:
        return False
    if mode is CompareMode.EXACT:
        joint = exact_joint_refine([g, h])
        return joint.multiset(0) == joint.multiset(1)
    return cr_invariant(g) == cr_invariant(h)


def cr_similar(g: Graph, h: Graph) -> bool:
    """Equal sets of stable colors, multiplicities ignored."""
    joint = exact_joint_refine([g, h])
    return joint.color_set(0) == joint.color_set(1)


def stable_colors_intersect(g: Graph, h: Graph) -> bool:
    joint = exact_joint_refine([g, h])
    return bool(joint.color_set(0) & joint.color_set(1))
