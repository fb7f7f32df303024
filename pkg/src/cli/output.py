import json
from typing import Optional, Sequence

from covers.unfold import UnfoldingTree
from experiments.report import VerificationReport
from models.types import (
    ALGORITHM_VERSION, BlockCutTree, Coloring, CrInvariant, DeckInvariant,
    LineWriter, OutputFormat, Record, Wl2Invariant,
)


def _hex(items: Sequence[bytes]) -> list[str]:
    return [item.hex() for item in items]


def _vertex_set(vertices) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


class OutputFormatter:
    """Renders results either as text lines or as one JSON record per line"""

    def __init__(self, output_format: OutputFormat = OutputFormat.TEXT, writer: Optional[LineWriter] = None) -> None:
        self.output_format = output_format
        self._write: LineWriter = writer if writer is not None else print

    @property
    def structured(self) -> bool:
        return self.output_format is OutputFormat.STRUCTURED

    def emit(self, record: Record, text: str) -> None:
        if self.structured:
            self._write(json.dumps({**record, "version": ALGORITHM_VERSION}))
        else:
            self._write(text)

    def coloring(self, graph6: str, stable: Coloring) -> None:
        classes = stable.partition()
        self.emit(
            {
                "kind": "refine",
                "graph6": graph6,
                "round": stable.round,
                "classes": [sorted(c) for c in classes],
                "colors": _hex(stable.assignment),
            },
            f"refine {graph6} round={stable.round} classes={len(classes)} "
            + " ".join(_vertex_set(c) for c in classes),
        )

    def cr(self, graph6: str, stable_round: int, invariant: CrInvariant) -> None:
        colors = invariant.hex_colors()
        self.emit(
            {
                "kind": "cr",
                "graph6": graph6,
                "stable_round": stable_round,
                "round": invariant.rounds,
                "colors": colors,
                "digest": invariant.digest().hex(),
            },
            f"cr {graph6} stable={stable_round} round={invariant.rounds} {' '.join(colors)} [{ALGORITHM_VERSION}]",
        )

    def dcr(self, graph6: str, invariant: DeckInvariant) -> None:
        cards = [card.digest().hex() for card in invariant.cards]
        digest = invariant.digest().hex()
        self.emit(
            {"kind": "dcr", "graph6": graph6, "round": invariant.card_order, "cards": cards, "digest": digest},
            f"dcr {graph6} round={invariant.card_order} {digest} cards: {' '.join(cards)} [{ALGORITHM_VERSION}]",
        )

    def wl2(self, graph6: str, invariant: Wl2Invariant) -> None:
        digest = invariant.digest().hex()
        classes = len(set(invariant.colors))
        self.emit(
            {"kind": "wl2", "graph6": graph6, "round": invariant.rounds, "pair_classes": classes, "digest": digest},
            f"wl2 {graph6} round={invariant.rounds} pair-classes={classes} {digest} [{ALGORITHM_VERSION}]",
        )

    def verdicts(self, left: str, right: str, verdicts: dict[str, Optional[bool]]) -> None:
        def word(value: Optional[bool]) -> str:
            return "n/a" if value is None else str(value).lower()

        self.emit(
            {"kind": "compare", "graphs": [left, right], **verdicts},
            " ".join(f"{name}:{word(value)}" for name, value in verdicts.items()),
        )

    def card(self, graph6: str, vertex: int, card6: str) -> None:
        self.emit({"kind": "card", "graph6": graph6, "vertex": vertex, "card": card6}, f"{vertex}\t{card6}")

    def unfolding(self, graph6: str, tree: UnfoldingTree, dot: str, code: str) -> None:
        if self.structured:
            self.emit(
                {
                    "kind": "unfold",
                    "graph6": graph6,
                    "root": tree.root,
                    "depth": tree.depth,
                    "nodes": tree.node_count,
                    "ahu": code,
                    "dot": dot,
                },
                dot,
            )
        else:
            self._write(dot.rstrip("\n"))

    def blockcut(self, graph6: str, tree: BlockCutTree) -> None:
        self.emit(
            {
                "kind": "blockcut",
                "graph6": graph6,
                "blocks": [sorted(b) for b in tree.blocks],
                "cut_vertices": sorted(tree.cut_vertices),
                "incidence": [list(pair) for pair in tree.incidence],
                "leaf_blocks": [sorted(b) for b in tree.leaf_blocks],
            },
            "\n".join([
                f"blockcut {graph6}",
                "  blocks " + " ".join(_vertex_set(b) for b in tree.blocks),
                "  cut-vertices " + _vertex_set(tree.cut_vertices),
                "  leaves " + " ".join(_vertex_set(b) for b in tree.leaf_blocks),
            ]),
        )

    def corpus_graph(self, graph6: str, connected: bool) -> None:
        self.emit({"kind": "graph", "graph6": graph6, "connected": connected}, graph6)

    def classification(self, cards: int, verdict: str) -> None:
        self.emit({"kind": "classify-deck", "cards": cards, "connectedness": verdict}, verdict)

    def text(self, line: str) -> None:
        self._write(line)

    def report(self, report: VerificationReport) -> None:
        self.emit(report.to_record(), report.to_text())
