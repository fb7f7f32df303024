"""
Corpus experiments.

Every experiment profiles each graph of a complete corpus once (digest keys
for the refinement, deck and 2-WL invariants plus an exact deck key built
from canonical card codes), groups the corpus by those keys and re-checks
every non-trivial class in exact mode before reporting it.
"""
import logging
import time
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, Iterable, Optional, Tuple

from covers.unfold import ahu_code, unfold
from corpus.enumerate import Corpus, get_corpus
from experiments.report import VerificationReport
from graphs.canon import canonical_form
from graphs.formats import emit_graph6, parse_graph6
from invariants.deck import connected_card_count, dcr_equivalent, dcr_invariant, deck, nash_williams_check
from invariants.refine import color_rounds, cr_equivalent, cr_invariant
from invariants.wl2 import wl2_equivalent, wl2_invariant
from models.errors import CorpusError, GraphDomainError, IntegrityError
from models.types import CompareMode, Experiment
from utils.helpers import parallel_map


logger = logging.getLogger(__name__)

Key = bytes


@dataclass(frozen=True)
class GraphProfile:
    graph6: str
    connected: bool
    cr: Key
    dcr: Optional[Key]
    wl2: Key
    exact_deck: Tuple[int, ...]


def profile_graph(graph6: str) -> GraphProfile:
    g = parse_graph6(graph6)
    return GraphProfile(
        graph6=graph6,
        connected=g.is_connected(),
        cr=cr_invariant(g).digest(),
        dcr=dcr_invariant(g).digest() if g.order >= 2 else None,
        wl2=wl2_invariant(g).digest(),
        exact_deck=tuple(sorted(canonical_form(card).code for card in deck(g))),
    )


def profile_corpus(corpus: Corpus, jobs: int = 1) -> list[GraphProfile]:
    return parallel_map(profile_graph, corpus.graph6_lines(), jobs, desc=f"profiles n={corpus.order}")


def group_by(profiles: Iterable[GraphProfile], key: Callable[[GraphProfile], object]) -> Dict[object, list[GraphProfile]]:
    """Classes in corpus order, keyed by `key`."""
    classes: Dict[object, list[GraphProfile]] = defaultdict(list)
    for profile in profiles:
        classes[key(profile)].append(profile)
    return classes


def _pairs(classes: Dict[object, list[GraphProfile]]) -> int:
    return sum(len(members) * (len(members) - 1) // 2 for members in classes.values())


def _multi(classes: Dict[object, list[GraphProfile]]) -> list[list[GraphProfile]]:
    return [members for members in classes.values() if len(members) > 1]


def _names(members: Iterable[GraphProfile]) -> list[str]:
    return [p.graph6 for p in members]


class _Experiment:
    """Shared setup for one run: corpus, profiles, report skeleton and timing"""

    def __init__(self, experiment: Experiment, n: int, corpus: Optional[Corpus], jobs: int, profile: bool = True) -> None:
        self.started = time.perf_counter()
        if corpus is None:
            corpus = get_corpus(n, jobs)
        elif corpus.order != n:
            raise CorpusError(f"Corpus has order {corpus.order}, expected {n}")
        self.corpus = corpus
        self.jobs = jobs
        self.report = VerificationReport(
            experiment=experiment.value,
            order=n,
            corpus_size=len(corpus),
            corpus_source=corpus.source,
        )
        if corpus.source != "builtin":
            self.report.notes.append("corpus completeness not established (external source)")
        self.profiles = profile_corpus(corpus, jobs) if profile else []
        if self.profiles:
            self.report.class_counts = {
                "iso": len(self.profiles),
                "cr": len(group_by(self.profiles, lambda p: p.cr)),
                "wl2": len(group_by(self.profiles, lambda p: p.wl2)),
                "exact_deck": len(group_by(self.profiles, lambda p: p.exact_deck)),
            }
            if n >= 2:
                self.report.class_counts["dcr"] = len(group_by(self.profiles, lambda p: p.dcr))

    def finish(self) -> VerificationReport:
        self.report.runtime_seconds = time.perf_counter() - self.started
        logger.info("%s n=%d: %s", self.report.experiment, self.report.order, self.report.verdict.value)
        return self.report.finalize()


def _confirm_dcr_class(members: list[GraphProfile]) -> None:
    first = parse_graph6(members[0].graph6)
    for other in members[1:]:
        if not dcr_equivalent(first, parse_graph6(other.graph6), CompareMode.EXACT):
            raise IntegrityError(f"Deck digests agree but exact decks differ: {members[0].graph6} {other.graph6}")


def _mixes_connectedness(members: list[GraphProfile]) -> bool:
    return len({p.connected for p in members}) > 1


def verify_main_theorem(n: int, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    """
    Connectedness must be constant on every refinement-deck class.

    Orders 1 and 2 are reported as out of scope: K2 and 2K1 share their deck.
    """
    run = _Experiment(Experiment.MAIN, n, corpus, jobs)
    report = run.report
    if n <= 2:
        report.in_scope = False
        report.notes.append("connectedness is not deck-determined below order 3")
        if n == 2:
            dcr_classes = group_by(run.profiles, lambda p: p.dcr)
            for members in _multi(dcr_classes):
                report.multi_member_classes.append(_names(members))
                if _mixes_connectedness(members):
                    report.notes.append("class mixes connectedness: " + " ".join(_names(members)))
        return run.finish()

    dcr_classes = group_by(run.profiles, lambda p: p.dcr)
    for members in _multi(dcr_classes):
        _confirm_dcr_class(members)
        report.multi_member_classes.append(_names(members))
        if _mixes_connectedness(members):
            report.violations.append("class mixes connectedness: " + " ".join(_names(members)))

    cr_classes = group_by(run.profiles, lambda p: p.cr)
    report.pair_counts = {
        "dcr_pairs": _pairs(dcr_classes),
        "cr_pairs": _pairs(cr_classes),
        "cr_pairs_mixed_connectedness": sum(
            1 for members in cr_classes.values() for a, b in combinations(members, 2) if a.connected != b.connected
        ),
        "cr_pairs_split_by_dcr": sum(
            1 for members in cr_classes.values() for a, b in combinations(members, 2) if a.dcr != b.dcr
        ),
    }
    return run.finish()


def verify_harary(n: int, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    """Connectedness is constant on exact-deck classes, each inside one refinement-deck class."""
    if n < 3:
        raise GraphDomainError(f"Deck connectedness is only determined from order 3, got {n}")
    run = _Experiment(Experiment.HARARY, n, corpus, jobs)
    report = run.report
    deck_classes = group_by(run.profiles, lambda p: p.exact_deck)
    for members in _multi(deck_classes):
        report.multi_member_classes.append(_names(members))
        if _mixes_connectedness(members):
            report.violations.append("exact-deck class mixes connectedness: " + " ".join(_names(members)))
        if len({p.dcr for p in members}) > 1:
            report.violations.append("exact-deck class splits across refinement decks: " + " ".join(_names(members)))
    report.pair_counts = {"exact_deck_pairs": _pairs(deck_classes)}
    return run.finish()


def probe_open_question(n: int, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    """
    List pairs with equal refinement decks but different refinement colors.

    Such pairs are findings, not violations. Every candidate is re-checked in
    exact mode on both sides before it is reported.
    """
    if n < 2:
        raise GraphDomainError(f"Refinement decks need order >= 2, got {n}")
    run = _Experiment(Experiment.OPEN_QUESTION, n, corpus, jobs)
    report = run.report
    if n <= 2:
        report.in_scope = False
        report.notes.append("below order 3 decks carry too little to determine refinement colors")

    dcr_classes = group_by(run.profiles, lambda p: p.dcr)
    candidates = 0
    for members in _multi(dcr_classes):
        report.multi_member_classes.append(_names(members))
        for a, b in combinations(members, 2):
            if a.cr == b.cr:
                continue
            candidates += 1
            g, h = parse_graph6(a.graph6), parse_graph6(b.graph6)
            if not dcr_equivalent(g, h, CompareMode.EXACT) or cr_equivalent(g, h, CompareMode.EXACT):
                raise IntegrityError(f"Digest and exact comparison disagree on {a.graph6} {b.graph6}")
            report.findings.append(" ".join(sorted((a.graph6, b.graph6))))
    report.pair_counts = {"dcr_pairs": _pairs(dcr_classes), "dcr_pairs_cr_differs": candidates}
    return run.finish()


def verify_hierarchy(n: int, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    """2-WL equivalence implies refinement, deck and connectedness equivalence."""
    run = _Experiment(Experiment.HIERARCHY, n, corpus, jobs)
    report = run.report
    wl2_classes = group_by(run.profiles, lambda p: p.wl2)
    for members in _multi(wl2_classes):
        report.multi_member_classes.append(_names(members))
        first = parse_graph6(members[0].graph6)
        for other in members[1:]:
            if not wl2_equivalent(first, parse_graph6(other.graph6), CompareMode.EXACT):
                raise IntegrityError(f"2-WL digests agree but exact colors differ: {members[0].graph6} {other.graph6}")
        for a, b in combinations(members, 2):
            pair = f"{a.graph6} {b.graph6}"
            if a.cr != b.cr:
                report.violations.append(f"2-WL equivalent but refinement differs: {pair}")
            if n >= 2 and a.dcr != b.dcr:
                report.violations.append(f"2-WL equivalent but decks differ: {pair}")
            if a.connected != b.connected:
                report.violations.append(f"2-WL equivalent but connectedness differs: {pair}")

    report.pair_counts = {
        "wl2_pairs": _pairs(wl2_classes),
        "cr_pairs": _pairs(group_by(run.profiles, lambda p: p.cr)),
    }
    if n >= 2:
        report.pair_counts["dcr_pairs"] = _pairs(group_by(run.profiles, lambda p: p.dcr))
    return run.finish()


def verify_little_theorem(n: int, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    """A graph is connected iff at least two of its cards are connected."""
    if n < 3:
        raise GraphDomainError(f"Connected-card counting needs order >= 3, got {n}")
    run = _Experiment(Experiment.LITTLE, n, corpus, jobs, profile=False)
    report = run.report
    for g, connected in zip(run.corpus.graphs, run.corpus.connected):
        count = connected_card_count(g)
        if connected != (count >= 2):
            report.violations.append(f"{emit_graph6(g)}: connected={connected} with {count} connected cards")
    return run.finish()


def _nash_williams_worker(graph6: str) -> Tuple[int, list[str]]:
    g = parse_graph6(graph6)
    result = nash_williams_check(g, g)
    return result.checked_pairs, [f"{graph6}: vertices {u} and {v}" for u, v in result.violations]


def verify_nash_williams(n: int, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    """Vertices with refinement-equivalent cards have equal iterated degrees."""
    if n < 2:
        raise GraphDomainError(f"Refinement decks need order >= 2, got {n}")
    run = _Experiment(Experiment.NASH, n, corpus, jobs, profile=False)
    report = run.report
    checked = 0
    for pairs, violations in parallel_map(_nash_williams_worker, run.corpus.graph6_lines(), jobs, desc="vertex pairs"):
        checked += pairs
        report.violations.extend(violations)
    report.pair_counts = {"vertex_pairs_checked": checked}
    return run.finish()


def _cover_worker(task: Tuple[str, int]) -> list[list[Tuple[Key, bytes]]]:
    graph6, depth = task
    g = parse_graph6(graph6)
    history = color_rounds(g, depth)
    return [
        [(history[r][x], ahu_code(unfold(g, x, r)).code) for x in range(g.order)]
        for r in range(depth + 1)
    ]


def verify_color_cover(n: int, depth: int, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    """
    Round-r colors and depth-r unfoldings induce the same partition of all
    (graph, vertex) pairs of the corpus, for every r up to `depth`.
    """
    if depth < 0:
        raise GraphDomainError(f"Depth must be non-negative, got {depth}")
    run = _Experiment(Experiment.COVER, n, corpus, jobs, profile=False)
    report = run.report
    lines = run.corpus.graph6_lines()
    results = parallel_map(_cover_worker, [(g6, depth) for g6 in lines], jobs, desc="unfoldings")

    for r in range(depth + 1):
        color_to_tree: Dict[Key, bytes] = {}
        tree_to_color: Dict[bytes, Key] = {}
        witness: Dict[Key, str] = {}
        for graph6, rounds in zip(lines, results):
            for x, (color, tree) in enumerate(rounds[r]):
                where = f"{graph6}:{x}"
                if color_to_tree.setdefault(color, tree) != tree:
                    report.violations.append(f"depth {r}: equal colors, different unfoldings at {witness[color]} and {where}")
                if tree_to_color.setdefault(tree, color) != color:
                    report.violations.append(f"depth {r}: equal unfoldings, different colors at {where}")
                witness.setdefault(color, where)
        report.class_counts[f"colors_r{r}"] = len(color_to_tree)
    report.pair_counts = {"vertices": sum(len(rounds[0]) for rounds in results)}
    return run.finish()


def run_experiment(experiment: Experiment, n: int, depth: Optional[int] = None, jobs: int = 1, corpus: Optional[Corpus] = None) -> VerificationReport:
    if experiment is Experiment.MAIN:
        return verify_main_theorem(n, jobs, corpus)
    if experiment is Experiment.HARARY:
        return verify_harary(n, jobs, corpus)
    if experiment is Experiment.HIERARCHY:
        return verify_hierarchy(n, jobs, corpus)
    if experiment is Experiment.LITTLE:
        return verify_little_theorem(n, jobs, corpus)
    if experiment is Experiment.NASH:
        return verify_nash_williams(n, jobs, corpus)
    if experiment is Experiment.COVER:
        return verify_color_cover(n, n if depth is None else depth, jobs, corpus)
    return probe_open_question(n, jobs, corpus)
