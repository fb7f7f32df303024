"""
Two-dimensional Weisfeiler-Leman refinement on ordered vertex pairs.

A pair starts with its atomic type (equal, adjacent, non-adjacent) and is
recolored by its previous color together with the multiset over all w of
(color(u, w), color(w, v)). Diagonal pairs are colored as well.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Tuple

from graphs.core import Graph
from invariants.digest import multiset_digest, tagged_digest
from models.errors import GraphDomainError
from models.types import ColorId, CompareMode, Wl2Invariant


_PERSON = b"crdeck-wl2"
_ATOMIC: Tuple[ColorId, ...] = (
    tagged_digest(b"equal", _PERSON),
    tagged_digest(b"adjacent", _PERSON),
    tagged_digest(b"non-adjacent", _PERSON),
)

PairColors = list[list[ColorId]]


def atomic_type(g: Graph, u: int, v: int) -> int:
    if u == v:
        return 0
    return 1 if g.has_edge(u, v) else 2


def _refine_pairs(n: int, colors: Sequence[Sequence[ColorId]]) -> PairColors:
    refined = []
    for u in range(n):
        row = []
        for v in range(n):
            inner = multiset_digest((colors[u][w] + colors[w][v] for w in range(n)), _PERSON)
            row.append(tagged_digest(colors[u][v] + inner, _PERSON))
        refined.append(row)
    return refined


def _class_count(colors: Sequence[Sequence[ColorId]]) -> int:
    return len({c for row in colors for c in row})


def wl2_invariant(g: Graph) -> Wl2Invariant:
    """Pair-color multiset read at the first round whose partition is stable."""
    n = g.order
    if n < 1:
        raise GraphDomainError("2-WL needs at least one vertex")
    colors: PairColors = [[_ATOMIC[atomic_type(g, u, v)] for v in range(n)] for u in range(n)]
    rounds = 0
    count = _class_count(colors)
    while True:
        refined = _refine_pairs(n, colors)
        rounds += 1
        refined_count = _class_count(refined)
        colors = refined
        if refined_count == count:
            break
        count = refined_count
    flat = sorted(c for row in colors for c in row)
    return Wl2Invariant(order=n, rounds=rounds, colors=tuple(flat))


@dataclass(frozen=True)
class JointPairColoring:
    rounds: int
    colors: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def multiset(self, index: int) -> Counter:
        return Counter(c for row in self.colors[index] for c in row)


def exact_joint_wl2(gs: Sequence[Graph]) -> JointPairColoring:
    """
    Refine the pair colorings of `gs` in lockstep with one shared renaming
    table per round, stopping once the total class count stops growing.
    """
    colors = [
        tuple(tuple(atomic_type(g, u, v) for v in range(g.order)) for u in range(g.order))
        for g in gs
    ]
    count = len({c for gc in colors for row in gc for c in row})
    rounds = 0
    while True:
        signatures = []
        for g, gc in zip(gs, colors):
            n = g.order
            signatures.append([
                [(gc[u][v], tuple(sorted((gc[u][w], gc[w][v]) for w in range(n)))) for v in range(n)]
                for u in range(n)
            ])
        rank = {sig: i for i, sig in enumerate(sorted({s for rows in signatures for row in rows for s in row}))}
        colors = [tuple(tuple(rank[s] for s in row) for row in rows) for rows in signatures]
        rounds += 1
        if len(rank) == count:
            break
        count = len(rank)
    return JointPairColoring(rounds=rounds, colors=tuple(colors))


def wl2_equivalent(g: Graph, h: Graph, mode: CompareMode = CompareMode.DIGEST) -> bool:
    if g.order != h.order:
        return False
    if g.order == 0:
        return True
    if mode is CompareMode.EXACT:
        joint = exact_joint_wl2([g, h])
        return joint.multiset(0) == joint.multiset(1)
    return wl2_invariant(g) == wl2_invariant(h)
