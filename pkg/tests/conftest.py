from typing import Callable, Dict

import networkx as nx
import pytest

from corpus.enumerate import Corpus, enumerate_graphs
from graphs.core import Graph
from graphs.named import named_graph
from utils.helpers import default_jobs


_CORPORA: Dict[int, Corpus] = {}


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.order))
    G.add_edges_from(g.edges())
    return G


def from_nx(G: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(G.nodes())}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in G.edges()])


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    """Keep corpus caches written during a test out of the home directory."""
    monkeypatch.setenv("CRDECK_CORPUS_DIR", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def corpus_of() -> Callable[[int], Corpus]:
    def get(n: int) -> Corpus:
        if n not in _CORPORA:
            _CORPORA[n] = enumerate_graphs(n, jobs=default_jobs() if n >= 7 else 1)
        return _CORPORA[n]
    return get


@pytest.fixture
def c6() -> Graph:
    return named_graph("C6")


@pytest.fixture
def two_c3() -> Graph:
    return named_graph("2C3")


@pytest.fixture
def p5() -> Graph:
    return named_graph("P5")


@pytest.fixture
def bowtie() -> Graph:
    return named_graph("bowtie")
