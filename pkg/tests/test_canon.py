import random

import networkx as nx
import pytest

from conftest import to_nx
from graphs.canon import canonical_form, canonical_graph, canonical_labeling, is_isomorphic, upper_triangle_code
from graphs.core import Graph
from graphs.named import named_graph


def _shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.order))
    rng.shuffle(perm)
    return g.relabel(perm)


def test_canonical_form_is_invariant_under_relabeling(corpus_of):
    rng = random.Random(11)
    for n in range(1, 6):
        for g in corpus_of(n).graphs:
            form = canonical_form(g)
            for _ in range(100):
                assert canonical_form(_shuffled(g, rng)) == form


@pytest.mark.slow
@pytest.mark.parametrize("n, tries", [(6, 100), (7, 10)])
def test_canonical_form_is_invariant_under_relabeling_large(corpus_of, n, tries):
    rng = random.Random(n)
    for g in corpus_of(n).graphs:
        form = canonical_form(g)
        for _ in range(tries):
            assert canonical_form(_shuffled(g, rng)) == form


def test_canonical_form_decides_isomorphism():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 9)
        p = rng.random()
        edges = [(i, j) for j in range(n) for i in range(j) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        h = _shuffled(g, rng) if rng.random() < 0.5 else Graph.from_edges(
            n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p]
        )
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_canonical_graph_realizes_the_form(bowtie):
    perm = canonical_labeling(bowtie)
    assert sorted(perm) == list(range(5))
    relabeled = canonical_graph(bowtie)
    assert relabeled == bowtie.relabel(perm)
    assert canonical_form(bowtie).code == upper_triangle_code(relabeled)
    assert canonical_form(bowtie).to_graph() == relabeled


def test_c6_and_2c3_are_not_isomorphic(c6, two_c3):
    assert not is_isomorphic(c6, two_c3)
    assert canonical_form(c6) != canonical_form(two_c3)


def test_highly_symmetric_graphs():
    for name in ("K8", "E8", "C8", "2C4", "S8", "4K2"):
        g = named_graph(name)
        assert canonical_form(g).to_graph().edge_count == g.edge_count


def test_trivial_orders():
    assert canonical_form(Graph(0, ())).code == 0
    assert canonical_labeling(Graph(1, (0,))) == [0]
