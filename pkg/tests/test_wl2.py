import random
from itertools import combinations

import pytest

from graphs.core import Graph
from graphs.named import named_graph
from invariants.refine import cr_invariant
from invariants.wl2 import atomic_type, exact_joint_wl2, wl2_equivalent, wl2_invariant
from models.errors import GraphDomainError
from models.types import CompareMode


def test_atomic_types(c6):
    assert atomic_type(c6, 2, 2) == 0
    assert atomic_type(c6, 2, 3) == 1
    assert atomic_type(c6, 0, 3) == 2


def test_separates_c6_from_2c3(c6, two_c3):
    assert not wl2_equivalent(c6, two_c3)
    assert not wl2_equivalent(c6, two_c3, CompareMode.EXACT)
    assert wl2_invariant(c6) != wl2_invariant(two_c3)


def test_invariant_under_relabeling():
    rng = random.Random(19)
    for name in ("bowtie", "C7", "S5", "2P3"):
        g = named_graph(name)
        for _ in range(5):
            perm = list(range(g.order))
            rng.shuffle(perm)
            h = g.relabel(perm)
            assert wl2_invariant(h) == wl2_invariant(g)
            assert wl2_equivalent(g, h, CompareMode.EXACT)


def test_invariant_shape(c6):
    inv = wl2_invariant(c6)
    assert inv.order == 6
    assert len(inv.colors) == 36
    assert inv.rounds >= 1


def test_small_orders():
    assert wl2_invariant(Graph(1, (0,))).order == 1
    assert wl2_equivalent(Graph(0, ()), Graph(0, ()))
    assert not wl2_equivalent(named_graph("K3"), named_graph("K4"))
    with pytest.raises(GraphDomainError):
        wl2_invariant(Graph(0, ()))


def test_digest_and_exact_modes_agree(corpus_of):
    for n in range(1, 6):
        graphs = corpus_of(n).graphs
        keys = [wl2_invariant(g) for g in graphs]
        for i, j in combinations(range(len(graphs)), 2):
            assert (keys[i] == keys[j]) == wl2_equivalent(graphs[i], graphs[j], CompareMode.EXACT)


def test_equivalence_implies_refinement_equivalence(corpus_of):
    for n in range(2, 7):
        classes = {}
        for g in corpus_of(n).graphs:
            classes.setdefault(wl2_invariant(g), []).append(g)
        for members in classes.values():
            assert len({cr_invariant(g) for g in members}) == 1
            assert len({g.is_connected() for g in members}) == 1


def test_exact_joint_wl2_shares_colors_across_graphs():
    g = named_graph("P4")
    h = g.relabel([3, 2, 1, 0])
    joint = exact_joint_wl2([g, h])
    assert joint.multiset(0) == joint.multiset(1)
    assert joint.rounds >= 1
