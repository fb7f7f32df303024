import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Dict, Tuple, Union

from graphs.core import Graph, delete_vertex
from graphs.formats import emit_graph6, parse_graph6
from invariants.refine import cr_equivalent, cr_invariant, iterated_degree
from models.errors import CorpusError, GraphDomainError, GraphFormatError, IntegrityError
from models.types import ALGORITHM_VERSION, CompareMode, Connectedness, DeckInvariant, MAX_ORDER

if TYPE_CHECKING:
    from corpus.enumerate import Corpus


logger = logging.getLogger(__name__)


def deck(g: Graph) -> list[Graph]:
    """Card i is g with vertex i deleted."""
    if g.order < 1:
        raise GraphDomainError("The order-0 graph has no deck")
    return [delete_vertex(g, v) for v in range(g.order)]


def dcr_invariant(g: Graph) -> DeckInvariant:
    if g.order < 2:
        raise GraphDomainError(f"The refinement deck needs order >= 2, got {g.order}")
    return DeckInvariant.create(card_order=g.order - 1, cards=[cr_invariant(card) for card in deck(g)])


def exact_dcr_equivalent(g: Graph, h: Graph) -> bool:
    """Match the 2n cards into exact refinement classes and compare counts per side."""
    if g.order != h.order:
        return False
    if 2 * (g.order - 1) > MAX_ORDER:
        raise GraphDomainError(f"Exact card comparison is limited to order {MAX_ORDER // 2 + 1}")
    representatives: list[Graph] = []
    counts: list[list[int]] = []
    for side, graph in enumerate((g, h)):
        for card in deck(graph):
            for index, rep in enumerate(representatives):
                if cr_equivalent(card, rep, CompareMode.EXACT):
                    counts[index][side] += 1
                    break
            else:
                representatives.append(card)
                counts.append([1 - side, side])
    return all(left == right for left, right in counts)


def dcr_equivalent(g: Graph, h: Graph, mode: CompareMode = CompareMode.DIGEST) -> bool:
    if g.order != h.order:
        return False
    if mode is CompareMode.EXACT:
        return exact_dcr_equivalent(g, h)
    return dcr_invariant(g) == dcr_invariant(h)


@dataclass
class NashWilliamsReport:
    """Card-equal vertex pairs checked for equal iterated degrees"""
    checked_pairs: int = 0
    violations: list[Tuple[int, int]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def nash_williams_check(g: Graph, h: Graph) -> NashWilliamsReport:
    """
    For every (u, v) whose cards are refinement-equivalent, the iterated
    degrees of u in g and v in h must agree.
    """
    if not dcr_equivalent(g, h):
        raise GraphDomainError("Graphs do not have the same refinement deck")
    left = [cr_invariant(card) for card in deck(g)]
    right = left if h is g else [cr_invariant(card) for card in deck(h)]
    report = NashWilliamsReport()
    for u, card_u in enumerate(left):
        for v, card_v in enumerate(right):
            if card_u != card_v:
                continue
            report.checked_pairs += 1
            if iterated_degree(g, u) != iterated_degree(h, v):
                report.violations.append((u, v))
    return report


def connected_card_count(g: Graph) -> int:
    if g.order < 3:
        raise GraphDomainError("Connected-card counting needs order >= 3 (both cards of 2K1 are connected)")
    return sum(1 for card in deck(g) if card.is_connected())


class DeckIndex:
    """Refinement-deck digests of a complete corpus, with connectedness flags"""

    def __init__(self, order: int, entries: Dict[str, list[Tuple[str, bool]]]) -> None:
        self.order = order
        self._entries = entries

    @classmethod
    def from_corpus(cls, corpus: "Corpus") -> 'DeckIndex':
        if corpus.order < 2:
            raise GraphDomainError("Deck indexes need order >= 2")
        entries: Dict[str, list[Tuple[str, bool]]] = {}
        for graph, connected in zip(corpus.graphs, corpus.connected):
            key = dcr_invariant(graph).digest().hex()
            entries.setdefault(key, []).append((emit_graph6(graph), connected))
        logger.debug("Indexed %d graphs of order %d into %d deck classes", len(corpus.graphs), corpus.order, len(entries))
        return cls(corpus.order, entries)

    def __len__(self) -> int:
        return sum(len(members) for members in self._entries.values())

    @property
    def class_count(self) -> int:
        return len(self._entries)

    def classify(self, d: DeckInvariant) -> Connectedness:
        if d.card_order + 1 != self.order:
            raise GraphDomainError(f"Deck of order {d.card_order + 1} against an index of order {self.order}")
        matches = self._entries.get(d.digest().hex())
        if not matches:
            return Connectedness.UNKNOWN
        flags = {connected for _, connected in matches}
        if len(flags) > 1:
            members = ", ".join(g6 for g6, _ in matches)
            raise IntegrityError(f"Deck class mixes connected and disconnected graphs: {members}")
        return Connectedness.CONNECTED if flags.pop() else Connectedness.DISCONNECTED

    def write(self, path: Union[str, Path]) -> None:
        lines = [f"# order={self.order} version={ALGORITHM_VERSION}"]
        for key in sorted(self._entries):
            for g6, connected in self._entries[key]:
                lines.append(f"{g6}\t{'C' if connected else 'D'}\t{key}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'DeckIndex':
        order = None
        entries: Dict[str, list[Tuple[str, bool]]] = {}
        for lineno, line in enumerate(Path(path).read_text(encoding="ascii").splitlines(), start=1):
            if not line.strip():
                continue
            if line.startswith("#"):
                if f"version={ALGORITHM_VERSION}" not in line:
                    raise CorpusError(f"{path}:{lineno}: deck index written by another algorithm version")
                continue
            fields = line.split("\t")
            if len(fields) != 3 or fields[1] not in ("C", "D"):
                raise CorpusError(f"{path}:{lineno}: expected 'graph6<TAB>C|D<TAB>digest'")
            try:
                graph = parse_graph6(fields[0])
            except GraphFormatError as e:
                raise e.at_line(lineno) from e
            if order is None:
                order = graph.order
            elif graph.order != order:
                raise CorpusError(f"{path}:{lineno}: order {graph.order} in an index of order {order}")
            entries.setdefault(fields[2], []).append((fields[0], fields[1] == "C"))
        if order is None:
            raise CorpusError(f"{path}: empty deck index")
        return cls(order, entries)


def connectedness_from_deck(d: DeckInvariant, corpus: Union["Corpus", DeckIndex]) -> Connectedness:
    """
    Look the deck up in a complete corpus of order card_order + 1.

    Matching graphs must agree on connectedness; a disagreement is an
    IntegrityError. Decks with no match are UNKNOWN.
    """
    index = corpus if isinstance(corpus, DeckIndex) else DeckIndex.from_corpus(corpus)
    return index.classify(d)
