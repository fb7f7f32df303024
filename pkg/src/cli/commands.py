import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from cli.inputs import Labeled, resolve_all
from cli.output import OutputFormatter
from corpus.enumerate import Corpus, corpus_text, get_corpus, save_corpus
from covers.unfold import ahu_code, unfold
from experiments.verify import run_experiment
from graphs.canon import is_isomorphic
from graphs.core import block_cut_tree
from graphs.formats import emit_dot, emit_graph6
from invariants.deck import DeckIndex, dcr_equivalent, dcr_invariant, deck
from invariants.refine import cr_equivalent, cr_invariant, cr_similar, refine_to_stable
from invariants.wl2 import wl2_equivalent, wl2_invariant
from models.errors import GraphDomainError, GraphInputError, UsageError
from models.types import CliConfig, Connectedness, DeckInvariant, ExitCode, Experiment
from utils.helpers import validate_depth, validate_graph_count, validate_order


logger = logging.getLogger(__name__)


def _check(result: tuple[bool, Optional[str]]) -> None:
    ok, message = result
    if not ok:
        raise UsageError(message)


class BaseCommand(ABC):
    def __init__(self, formatter: OutputFormatter) -> None:
        self.formatter = formatter

    @abstractmethod
    def run(self, config: CliConfig) -> int:
        pass

    def _graphs(self, config: CliConfig, expected: Optional[int] = None) -> list[Labeled]:
        graphs = resolve_all(config.graphs)
        if expected is not None:
            _check(validate_graph_count(graphs, expected))
        elif not graphs:
            raise UsageError("At least one graph is required")
        return graphs

    def _corpus(self, config: CliConfig, n: int) -> Corpus:
        return get_corpus(n, config.jobs, path=config.corpus)


class RefineCommand(BaseCommand):
    def run(self, config: CliConfig) -> int:
        for label, g in self._graphs(config):
            self.formatter.coloring(label, refine_to_stable(g)[-1])
        return ExitCode.OK


class CrCommand(BaseCommand):
    def run(self, config: CliConfig) -> int:
        for label, g in self._graphs(config):
            stable_round = len(refine_to_stable(g)) - 1
            self.formatter.cr(label, stable_round, cr_invariant(g))
        return ExitCode.OK


class DcrCommand(BaseCommand):
    def run(self, config: CliConfig) -> int:
        for label, g in self._graphs(config):
            self.formatter.dcr(label, dcr_invariant(g))
        return ExitCode.OK


class Wl2Command(BaseCommand):
    def run(self, config: CliConfig) -> int:
        for label, g in self._graphs(config):
            self.formatter.wl2(label, wl2_invariant(g))
        return ExitCode.OK


class CompareCommand(BaseCommand):
    """Isomorphism, refinement, deck, 2-WL and similarity verdicts for two graphs"""

    def run(self, config: CliConfig) -> int:
        (left, g), (right, h) = self._graphs(config, expected=2)
        mode = config.mode
        if g.order == h.order and g.order < 2:
            dcr = None
        else:
            dcr = dcr_equivalent(g, h, mode)
        self.formatter.verdicts(left, right, {
            "iso": is_isomorphic(g, h),
            "cr": cr_equivalent(g, h, mode),
            "dcr": dcr,
            "wl2": wl2_equivalent(g, h, mode),
            "similar": cr_similar(g, h),
        })
        return ExitCode.OK


class DeckCommand(BaseCommand):
    def run(self, config: CliConfig) -> int:
        for label, g in self._graphs(config):
            for vertex, card in enumerate(deck(g)):
                self.formatter.card(label, vertex, emit_graph6(card))
        return ExitCode.OK


class UnfoldCommand(BaseCommand):
    def run(self, config: CliConfig) -> int:
        (label, g), = self._graphs(config, expected=1)
        if config.vertex is None:
            raise UsageError("unfold needs a root vertex")
        _check(validate_depth(config.depth))
        tree = unfold(g, config.vertex, config.depth, config.guard_nodes)
        self.formatter.unfolding(label, tree, emit_dot(tree, "U"), str(ahu_code(tree)))
        return ExitCode.OK


class BlockCutCommand(BaseCommand):
    def run(self, config: CliConfig) -> int:
        for label, g in self._graphs(config):
            self.formatter.blockcut(label, block_cut_tree(g))
        return ExitCode.OK


class EnumerateCommand(BaseCommand):
    """Print or store the corpus of one order, optionally with its deck index"""

    def run(self, config: CliConfig) -> int:
        _check(validate_order(config.n))
        corpus = self._corpus(config, config.n)
        if config.out:
            save_corpus(corpus, config.out)
            logger.info("Wrote %d graphs of order %d to %s", len(corpus), corpus.order, config.out)
        elif self.formatter.structured:
            for graph6, connected in zip(corpus.graph6_lines(), corpus.connected):
                self.formatter.corpus_graph(graph6, connected)
        else:
            self.formatter.text(corpus_text(corpus).rstrip("\n"))
        if config.index:
            DeckIndex.from_corpus(corpus).write(config.index)
            logger.info("Wrote deck index for order %d to %s", corpus.order, config.index)
        return ExitCode.OK


def _is_deck_index(path: str) -> bool:
    with open(path, encoding="ascii") as handle:
        for line in handle:
            if line.strip() and not line.startswith("#"):
                return "\t" in line
    return False


class ClassifyDeckCommand(BaseCommand):
    """
    Decide connectedness from a deck given as its cards.

    The deck is looked up in a deck index (--index, or --corpus pointing at an
    index file), in a graph6 corpus (--corpus), or in the built-in corpus.
    """

    def run(self, config: CliConfig) -> int:
        cards = [g for _, g in self._graphs(config)]
        card_order = cards[0].order
        if any(card.order != card_order for card in cards):
            raise GraphInputError("All cards of a deck must have the same order")
        n = card_order + 1
        if len(cards) != n:
            raise UsageError(f"A deck of order-{card_order} cards has {n} cards, got {len(cards)}")
        if n < 3:
            raise GraphDomainError("Connectedness is only determined by the deck from order 3")

        index = self._index(config, n)
        d = DeckInvariant.create(card_order, [cr_invariant(card) for card in cards])
        verdict = index.classify(d)
        self.formatter.classification(len(cards), verdict.value)
        return ExitCode.ATTENTION if verdict is Connectedness.UNKNOWN else ExitCode.OK

    def _index(self, config: CliConfig, n: int) -> DeckIndex:
        source = config.index or config.corpus
        if source and Path(source).is_file() and _is_deck_index(source):
            index = DeckIndex.load(source)
            if index.order != n:
                raise GraphInputError(f"Deck index {source} has order {index.order}, expected {n}")
            return index
        return DeckIndex.from_corpus(self._corpus(config, n))


class VerifyCommand(BaseCommand):
    """Run one corpus experiment and print its report"""

    def __init__(self, formatter: OutputFormatter, experiment: Optional[Experiment] = None) -> None:
        super().__init__(formatter)
        self.experiment = experiment

    def run(self, config: CliConfig) -> int:
        experiment = self.experiment or config.experiment
        if experiment is None:
            raise UsageError("verify needs an experiment: main, harary, hierarchy, little, nash or cover")
        _check(validate_order(config.n))
        if experiment is Experiment.COVER and config.depth is not None:
            _check(validate_depth(config.depth))
        corpus = self._corpus(config, config.n) if config.corpus else None
        report = run_experiment(experiment, config.n, depth=config.depth, jobs=config.jobs, corpus=corpus)
        self.formatter.report(report)
        return ExitCode.ATTENTION if report.requires_attention else ExitCode.OK
