import logging

import networkx as nx
import pytest

from conftest import from_nx
from corpus.enumerate import (
    GENERATOR_AUGMENT, GENERATOR_BITMASK, SOURCE_BUILTIN, SOURCE_EXTERNAL, cache_path, corpus_text,
    enumerate_graphs, get_corpus, graph_from_mask, load_corpus_graph6, save_corpus,
)
from graphs.canon import canonical_form
from graphs.core import complement
from graphs.named import named_graph
from models.errors import CorpusError, GraphFormatError, GraphInputError
from utils.helpers import default_jobs


CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


@pytest.mark.parametrize("n", sorted(CLASS_COUNTS))
def test_class_counts(corpus_of, n):
    corpus = corpus_of(n)
    assert len(corpus) == CLASS_COUNTS[n]
    assert corpus.connected_count == CONNECTED_COUNTS[n]
    assert corpus.source == SOURCE_BUILTIN


def test_corpus_matches_graph_atlas(corpus_of):
    for n in range(1, 7):
        atlas = {canonical_form(from_nx(G)).code for G in nx.graph_atlas_g() if G.number_of_nodes() == n}
        assert {canonical_form(g).code for g in corpus_of(n).graphs} == atlas


@pytest.mark.slow
def test_order_seven(corpus_of):
    corpus = corpus_of(7)
    assert corpus.generator == GENERATOR_BITMASK
    assert len(corpus) == 1044
    assert corpus.connected_count == 853
    atlas = {canonical_form(from_nx(G)).code for G in nx.graph_atlas_g() if G.number_of_nodes() == 7}
    assert {canonical_form(g).code for g in corpus.graphs} == atlas
    assert enumerate_graphs(7, jobs=default_jobs(), method="augment").graphs == corpus.graphs


@pytest.mark.slow
def test_order_eight():
    corpus = enumerate_graphs(8, jobs=default_jobs())
    assert corpus.generator == GENERATOR_AUGMENT
    assert len(corpus) == 12346
    assert corpus.connected_count == 11117


def test_methods_agree(corpus_of):
    for n in (4, 5):
        bitmask = enumerate_graphs(n, method="bitmask")
        augment = enumerate_graphs(n, method="augment")
        assert bitmask.graphs == augment.graphs
        assert bitmask.generator == GENERATOR_BITMASK
        assert augment.generator == GENERATOR_AUGMENT
    assert corpus_of(6).generator == GENERATOR_BITMASK
    with pytest.raises(GraphInputError):
        enumerate_graphs(4, method="orderly")


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_corpus_is_closed_under_complement(corpus_of, n):
    codes = {canonical_form(g).code for g in corpus_of(n).graphs}
    assert {canonical_form(complement(g)).code for g in corpus_of(n).graphs} == codes


def test_parallel_enumeration_is_deterministic(corpus_of):
    assert enumerate_graphs(5, jobs=2).graphs == corpus_of(5).graphs


def test_order_limits():
    with pytest.raises(GraphInputError):
        enumerate_graphs(0)
    with pytest.raises(GraphInputError):
        enumerate_graphs(9)


def test_corpus_is_ordered_by_edge_count(corpus_of):
    edges = [g.edge_count for g in corpus_of(5).graphs]
    assert edges == sorted(edges)
    assert edges[0] == 0 and edges[-1] == 10


def test_graph_from_mask():
    assert graph_from_mask(3, 0b111) == named_graph("K3")
    assert graph_from_mask(3, 0b001).edge_count == 1
    assert graph_from_mask(3, 0b001).has_edge(0, 1)
    assert graph_from_mask(3, 0b100).has_edge(1, 2)


def test_save_and_load(corpus_of, tmp_path):
    corpus = corpus_of(5)
    target = tmp_path / "n5.g6"
    save_corpus(corpus, target)
    header = target.read_text().splitlines()[0]
    assert header.startswith("# order=5 count=34 generator=")
    loaded = load_corpus_graph6(target)
    assert loaded.graphs == corpus.graphs
    assert loaded.source == SOURCE_BUILTIN


def test_external_corpus_files(tmp_path, caplog):
    target = tmp_path / "mine.g6"
    target.write_text("C~\nC~\nC?\n")
    with caplog.at_level(logging.WARNING):
        corpus = load_corpus_graph6(target)
    assert len(corpus) == 2
    assert corpus.source == SOURCE_EXTERNAL
    assert "duplicate" in caplog.text

    target.write_text("C~\nD??\n")
    with pytest.raises(CorpusError):
        load_corpus_graph6(target)

    target.write_text("# nothing here\n")
    with pytest.raises(CorpusError):
        load_corpus_graph6(target)

    target.write_text("C~\nC~~\n")
    with pytest.raises(GraphFormatError) as info:
        load_corpus_graph6(target)
    assert info.value.line == 2

    with pytest.raises(CorpusError):
        load_corpus_graph6(tmp_path / "missing.g6")


def test_cached_corpus(tmp_path, monkeypatch):
    monkeypatch.setenv("CRDECK_CORPUS_DIR", str(tmp_path / "corpora"))
    first = get_corpus(4)
    assert cache_path(4) == tmp_path / "corpora" / "graphs-n4.g6"
    assert cache_path(4).read_text() == corpus_text(first)
    assert get_corpus(4).graphs == first.graphs


def test_stale_cache_is_replaced(tmp_path, monkeypatch):
    monkeypatch.setenv("CRDECK_CORPUS_DIR", str(tmp_path))
    cache_path(3).parent.mkdir(parents=True, exist_ok=True)
    cache_path(3).write_text("# order=3 generator=crdeck-augment version=crdeck-0\nBw\n")
    assert len(get_corpus(3)) == 4
    assert "version=crdeck-1" in cache_path(3).read_text()


def test_explicit_corpus_path(tmp_path, corpus_of):
    target = tmp_path / "n4.g6"
    save_corpus(corpus_of(4), target)
    assert len(get_corpus(4, path=target)) == 11
    with pytest.raises(CorpusError):
        get_corpus(5, path=target)
    with pytest.raises(CorpusError):
        get_corpus(9)
