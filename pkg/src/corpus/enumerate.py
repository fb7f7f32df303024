"""
Complete corpora of pairwise non-isomorphic graphs of one order.

Orders up to 7 iterate over every upper-triangle bitmask; order 8 grows
the corpus one edge at a time from the edgeless graph, keeping one canonical
representative per class. Both paths deduplicate through canonical_form.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from graphs.canon import CanonicalForm, canonical_form, upper_triangle_code
from graphs.core import Graph
from graphs.formats import emit_graph6, parse_graph_line
from models.errors import CorpusError, GraphFormatError, GraphInputError
from models.types import ALGORITHM_VERSION
from utils.helpers import corpus_cache_dir, parallel_map


logger = logging.getLogger(__name__)

MAX_BUILTIN_ORDER = 8
BITMASK_MAX_ORDER = 7
GENERATOR_BITMASK = "crdeck-bitmask"
GENERATOR_AUGMENT = "crdeck-augment"
SOURCE_BUILTIN = "builtin"
SOURCE_EXTERNAL = "external"


@dataclass(frozen=True)
class Corpus:
    """Pairwise non-isomorphic graphs of one order, canonically labeled"""
    order: int
    graphs: Tuple[Graph, ...]
    connected: Tuple[bool, ...]
    source: str = SOURCE_BUILTIN
    generator: str = GENERATOR_AUGMENT

    def __len__(self) -> int:
        return len(self.graphs)

    @property
    def connected_count(self) -> int:
        return sum(self.connected)

    def graph6_lines(self) -> list[str]:
        return [emit_graph6(g) for g in self.graphs]


def _sort_key(g: Graph) -> Tuple[int, int]:
    return (g.edge_count, upper_triangle_code(g))


def build_corpus(order: int, codes: set[int], source: str, generator: str) -> Corpus:
    graphs = sorted((CanonicalForm(order, code).to_graph() for code in codes), key=_sort_key)
    return Corpus(
        order=order,
        graphs=tuple(graphs),
        connected=tuple(g.is_connected() for g in graphs),
        source=source,
        generator=generator,
    )


def graph_from_mask(n: int, mask: int) -> Graph:
    """Bit k of `mask` is the k-th pair in column-major upper-triangle order."""
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if mask >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def _codes_for_mask_range(task: Tuple[int, int, int]) -> set[int]:
    n, start, stop = task
    return {canonical_form(graph_from_mask(n, mask)).code for mask in range(start, stop)}


def _augment(task: Tuple[int, int]) -> list[int]:
    n, code = task
    g = CanonicalForm(n, code).to_graph()
    children = set()
    for j in range(1, n):
        for i in range(j):
            if g.has_edge(i, j):
                continue
            rows = list(g.rows)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
            children.add(canonical_form(Graph(n, tuple(rows))).code)
    return sorted(children)


def _enumerate_bitmask(n: int, jobs: int) -> set[int]:
    total = 1 << (n * (n - 1) // 2)
    step = max(1, total // max(1, jobs * 4))
    tasks = [(n, start, min(start + step, total)) for start in range(0, total, step)]
    codes: set[int] = set()
    for chunk in parallel_map(_codes_for_mask_range, tasks, jobs, desc=f"bitmask n={n}"):
        codes |= chunk
    return codes


def _enumerate_augment(n: int, jobs: int) -> set[int]:
    level = {canonical_form(Graph(n, (0,) * n)).code}
    codes = set(level)
    for edges in range(n * (n - 1) // 2):
        grown: set[int] = set()
        for children in parallel_map(_augment, [(n, code) for code in sorted(level)], jobs, desc=f"n={n} m={edges + 1}"):
            grown.update(children)
        logger.debug("Order %d: %d classes with %d edges", n, len(grown), edges + 1)
        codes |= grown
        level = grown
    return codes


def enumerate_graphs(n: int, jobs: int = 1, method: Optional[str] = None) -> Corpus:
    """
    All graphs of order n up to isomorphism.

    `method` is "bitmask" or "augment"; by default bitmask iteration is used
    up to order 7 and edge augmentation for order 8.
    """
    if not 1 <= n <= MAX_BUILTIN_ORDER:
        raise GraphInputError(f"Built-in enumeration covers orders 1..{MAX_BUILTIN_ORDER}, got {n}")
    if method is None:
        method = "bitmask" if n <= BITMASK_MAX_ORDER else "augment"
    if method == "bitmask":
        codes, generator = _enumerate_bitmask(n, jobs), GENERATOR_BITMASK
    elif method == "augment":
        codes, generator = _enumerate_augment(n, jobs), GENERATOR_AUGMENT
    else:
        raise GraphInputError(f"Unknown enumeration method: {method}")
    corpus = build_corpus(n, codes, SOURCE_BUILTIN, generator)
    logger.debug("Enumerated %d graphs of order %d (%s)", len(corpus), n, generator)
    return corpus


def _read_header(line: str) -> Dict[str, str]:
    fields = {}
    for token in line.lstrip("#").split():
        key, _, value = token.partition("=")
        fields[key] = value
    return fields


def load_corpus_graph6(path: Union[str, Path]) -> Corpus:
    """
    Read a file of graph6 (or sparse6) lines into a corpus.

    Duplicate classes are dropped with a warning. Completeness cannot be
    checked and the corpus is marked as external unless the header names one
    of the built-in generators of the current algorithm version.
    """
    header: Dict[str, str] = {}
    order = None
    codes: set[int] = set()
    duplicates = 0
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as e:
        raise CorpusError(f"Cannot read corpus file {path}: {e}") from e

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            header.update(_read_header(line))
            continue
        try:
            graph = parse_graph_line(line)
        except GraphFormatError as e:
            raise e.at_line(lineno) from e
        if order is None:
            order = graph.order
        elif graph.order != order:
            raise CorpusError(f"{path}:{lineno}: order {graph.order} in a corpus of order {order}")
        code = canonical_form(graph).code
        if code in codes:
            duplicates += 1
        codes.add(code)

    if order is None:
        raise CorpusError(f"Corpus file {path} holds no graphs")
    if duplicates:
        logger.warning("%s: dropped %d duplicate graphs", path, duplicates)

    generator = header.get("generator", SOURCE_EXTERNAL)
    builtin = generator in (GENERATOR_BITMASK, GENERATOR_AUGMENT) and header.get("version") == ALGORITHM_VERSION
    return build_corpus(order, codes, SOURCE_BUILTIN if builtin else SOURCE_EXTERNAL, generator)


def save_corpus(corpus: Corpus, path: Union[str, Path]) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(corpus_text(corpus), encoding="ascii")


def corpus_text(corpus: Corpus) -> str:
    header = f"# order={corpus.order} count={len(corpus)} generator={corpus.generator} version={ALGORITHM_VERSION}"
    return "\n".join([header, *corpus.graph6_lines()]) + "\n"


def cache_path(n: int) -> Path:
    return corpus_cache_dir() / f"graphs-n{n}.g6"


def get_corpus(n: int, jobs: int = 1, path: Optional[Union[str, Path]] = None, use_cache: bool = True) -> Corpus:
    """Corpus of order n from `path`, the cache directory, or fresh enumeration."""
    if path is not None:
        corpus = load_corpus_graph6(path)
        if corpus.order != n:
            raise CorpusError(f"Corpus file {path} has order {corpus.order}, expected {n}")
        return corpus

    cached = cache_path(n)
    if use_cache and cached.exists():
        corpus = load_corpus_graph6(cached)
        if corpus.source == SOURCE_BUILTIN and corpus.order == n:
            logger.debug("Corpus cache hit: %s", cached)
            return corpus
        logger.warning("Ignoring stale corpus cache %s", cached)

    if n > MAX_BUILTIN_ORDER:
        raise CorpusError(f"No corpus for order {n}: pass a graph6 file with --corpus")
    corpus = enumerate_graphs(n, jobs)
    if use_cache:
        try:
            save_corpus(corpus, cached)
        except OSError as e:
            logger.warning("Could not write corpus cache %s: %s", cached, e)
    return corpus
