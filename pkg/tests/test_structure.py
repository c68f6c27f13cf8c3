from __future__ import annotations

import itertools
import random

import pytest
from conftest import planar_graphs
from hypothesis import given
from hypothesis import strategies as st

from gallai.corpus import cii_corpus, glued_icosahedra, random_flips
from gallai.graph import (Graph, complete_graph, enumerate_cuts, icosahedron, is_connected,
                          is_planar, k5_minus, octahedron, path_graph)
from gallai.oracle import enumerate_connected_planar
from gallai.structure import (check_contraction, find_ci, find_configuration,
                              is_almost_4_connected, minimal_2_contraction)

BOWTIE = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
# two K4s glued on {0,1,2}; private vertices 3 and 4
TWIN_K4 = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4)])


def test_find_ci_examples():
    a, b = find_ci(path_graph(3))
    assert a != b and {a, b} <= {0, 1, 2}
    assert find_ci(icosahedron()) is None
    assert find_ci(k5_minus((0, 4))) == (0, 4)


def test_almost_4_connected_examples():
    for U in itertools.permutations(range(4)):
        assert is_almost_4_connected(complete_graph(4), U)
    chk = is_almost_4_connected(TWIN_K4, [3, 4, 0, 1])
    assert not chk.ok
    assert set(chk.cut.vertices) == {0, 1, 2}
    ico = icosahedron()
    rng = random.Random(4)
    for _ in range(10):
        assert is_almost_4_connected(ico, rng.sample(range(12), 4))


def test_almost_needs_four_vertices():
    with pytest.raises(ValueError):
        is_almost_4_connected(complete_graph(4), [0, 1, 2])


def _brute_almost(g, U):
    """Direct reading of the definition over every vertex set of size <= 3."""
    import networkx as nx
    for size in (1, 2, 3):
        for cut in itertools.combinations(range(g.n), size):
            h = g.to_networkx()
            h.remove_nodes_from(cut)
            comp = {v: i for i, cc in enumerate(nx.connected_components(h)) for v in cc}
            outside = [u for u in U if u not in cut]
            if len({comp[u] for u in outside}) > 1:
                return False
            for u in U:
                if u in cut:
                    nb = [w for w in g.adj[u] if w not in cut]
                    if len({comp[w] for w in nb}) > 1:
                        return False
    return True


@given(planar_graphs(lo=5, hi=10, density=2.4), st.integers(0, 1000))
def test_almost_matches_definition(g, seed):
    U = random.Random(seed).sample(range(g.n), 4)
    assert bool(is_almost_4_connected(g, U)) == _brute_almost(g, U)


def test_contraction_examples():
    h = minimal_2_contraction(complete_graph(4))
    assert h.vertices == frozenset(range(4))
    h = minimal_2_contraction(BOWTIE)
    assert len(h.vertices) == 3 and 2 in h.vertices and 2 in h.damaged
    assert check_contraction(BOWTIE, h) == []
    for g in (octahedron(), icosahedron()):
        assert minimal_2_contraction(g).vertices == frozenset(range(g.n))


@given(planar_graphs(lo=3, hi=25))
def test_contraction_is_valid_and_minimal(g):
    h = minimal_2_contraction(g)
    assert check_contraction(g, h) == []
    hg, old = h.graph(g)
    assert is_planar(hg) and is_connected(hg)


def test_configuration_examples():
    assert find_configuration(k5_minus()).kind == "CI"
    assert find_configuration(k5_minus()).ci_pair == (0, 4)
    w = find_configuration(icosahedron())
    assert w.kind == "CII"
    assert is_almost_4_connected(icosahedron(), w.four_family)
    assert all(icosahedron().degree(u) == 5 for u in w.four_family)


def _certified(g, w) -> bool:
    if w.kind == "CI":
        a, b = w.ci_pair
        return a != b and g.degree(a) <= 4 and g.degree(b) <= 4
    U = w.four_family
    return len(set(U)) == 4 and all(g.degree(u) == 5 for u in U) and bool(is_almost_4_connected(g, U))


@given(planar_graphs(lo=3, hi=40))
def test_configuration_always_certified(g):
    assert _certified(g, find_configuration(g))


def test_configuration_on_min_degree_five_corpus():
    for name, g in cii_corpus(12):
        w = find_configuration(g)
        assert w.kind == "CII", name
        assert _certified(g, w), name


def test_glued_and_flipped_icosahedra():
    g = glued_icosahedra()
    assert min(g.degree(v) for v in range(g.n)) >= 5 and enumerate_cuts(g, 3)
    w = find_configuration(g)
    assert _certified(g, w)
    h = random_flips(icosahedron(), 6, seed=2)
    assert is_planar(h) and _certified(h, find_configuration(h))


def test_configuration_on_census_five():
    for g in enumerate_connected_planar(5):
        assert _certified(g, find_configuration(g))
