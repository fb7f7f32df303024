import networkx as nx
import pytest

from conftest import from_nx, to_nx
from covers.unfold import unfold
from graphs.core import Graph
from graphs.formats import (
    emit_dot, emit_edge_list, emit_graph6, parse_edge_list, parse_graph6,
    parse_graph_line, parse_sparse6,
)
from graphs.named import named_graph
from models.errors import GraphFormatError


def test_known_graph6_strings():
    assert emit_graph6(named_graph("K4")) == "C~"
    assert parse_graph6("C~") == named_graph("K4")
    assert parse_graph6("?") == Graph(0, ())
    assert parse_graph6(">>graph6<<C~") == named_graph("K4")
    assert emit_graph6(Graph(1, (0,))) == "@"


def test_graph6_matches_networkx(corpus_of):
    for n in range(1, 7):
        for g in corpus_of(n).graphs:
            expected = nx.to_graph6_bytes(to_nx(g), header=False).strip().decode("ascii")
            assert emit_graph6(g) == expected
            assert from_nx(nx.from_graph6_bytes(expected.encode("ascii"))) == g


@pytest.mark.slow
def test_graph6_round_trip_order_7(corpus_of):
    for g in corpus_of(7).graphs:
        assert parse_graph6(emit_graph6(g)) == g


def test_graph6_errors_carry_offsets():
    with pytest.raises(GraphFormatError) as info:
        parse_graph6("C~~")
    assert info.value.offset == 2

    with pytest.raises(GraphFormatError) as info:
        parse_graph6("E")
    assert "Truncated" in info.value.message

    with pytest.raises(GraphFormatError) as info:
        parse_graph6("C 3")
    assert info.value.offset == 1

    with pytest.raises(GraphFormatError):
        parse_graph6("~")
    with pytest.raises(GraphFormatError):
        parse_graph6("")


def test_graph6_rejects_nonzero_padding():
    # order 2 has one pair and five padding bits
    assert parse_graph6("A_") == named_graph("K2")
    with pytest.raises(GraphFormatError):
        parse_graph6("A`")


def test_emit_graph6_order_limit():
    with pytest.raises(GraphFormatError):
        emit_graph6(Graph(63, (0,) * 63))


def test_sparse6_matches_networkx(corpus_of):
    for n in range(2, 7):
        for g in corpus_of(n).graphs:
            line = nx.to_sparse6_bytes(to_nx(g), header=False).strip().decode("ascii")
            assert parse_sparse6(line) == g
            assert parse_graph_line(line) == g


def test_sparse6_rejects_loops():
    G = nx.MultiGraph()
    G.add_nodes_from(range(3))
    G.add_edge(1, 1)
    line = nx.to_sparse6_bytes(G, header=False).strip().decode("ascii")
    with pytest.raises(GraphFormatError):
        parse_sparse6(line)


def test_edge_list_round_trip(bowtie):
    text = emit_edge_list(bowtie)
    assert text.splitlines()[0] == "5"
    assert parse_edge_list(text) == bowtie


def test_edge_list_comments_and_errors():
    g = parse_edge_list("# triangle\n3\n0 1\n1 2\n\n2 0\n")
    assert g == named_graph("C3")

    with pytest.raises(GraphFormatError) as info:
        parse_edge_list("3\n0 1\n1 1\n")
    assert info.value.line == 3

    with pytest.raises(GraphFormatError) as info:
        parse_edge_list("3\n0 1\n  0 7\n")
    assert (info.value.line, info.value.offset) == (3, 2)

    with pytest.raises(GraphFormatError):
        parse_edge_list("3\n0 1\n1 0\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("0 1\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("# nothing\n")


def test_dot_for_graph_and_unfolding():
    dot = emit_dot(named_graph("P3"), "P")
    assert dot.startswith("graph P {")
    assert "  0 -- 1;" in dot and "  1 -- 2;" in dot

    tree = unfold(named_graph("C3"), 0, 2)
    dot = emit_dot(tree, "U")
    assert dot.count(" -- ") == 4
    assert 'n0 [label="0", shape=doublecircle]' in dot
