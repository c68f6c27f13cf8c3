from __future__ import annotations

import json

import pytest
from conftest import planar_graphs
from hypothesis import given

from gallai.coloring import (EdgeColoring, ShapeKind, apply_deviation, apply_extension,
                             classify_class, coloring_from_json, expected_relaxed, good_budget,
                             is_exceptional, verify_good_coloring, verify_path_coloring)
from gallai.errors import BadSection, ColoringDomainMismatch, CreatesBranch, NotOnClass
from gallai.graph import Graph, complete_graph, k5_minus, path_graph
from gallai.oracle import min_path_decomposition

# the 3-path decomposition of K5 minus {0,4}: two paths of length 4 and one edge
K5M_PATHS = [[0, 1, 4, 2, 3], [0, 2, 1, 3, 4], [0, 3]]


def test_classify_path_cycle_invalid():
    p = classify_class(path_graph(3), [(0, 1), (1, 2)])
    assert p.kind is ShapeKind.Path and p.endpoints == (0, 2)
    c = classify_class(None, [(0, 1), (1, 2), (2, 0)])
    assert c.kind is ShapeKind.Cycle and c.length == 3
    assert classify_class(None, [(0, 1), (2, 3)]).kind is ShapeKind.Invalid
    assert classify_class(None, [(0, 1), (0, 2), (0, 3)]).kind is ShapeKind.Invalid
    assert classify_class(path_graph(3), [(0, 2)]).kind is ShapeKind.Invalid


def test_k3_two_paths():
    g = complete_graph(3)
    c = EdgeColoring.from_classes([[(0, 1), (1, 2)], [(2, 0)]])
    rep = verify_path_coloring(g, c)
    assert rep.ok and rep.color_count == 2


def test_k3_single_color_is_cycle():
    g = complete_graph(3)
    rep = verify_path_coloring(g, EdgeColoring.from_classes([g.sorted_edges()]))
    assert not rep.ok
    assert rep.violations[0][0] == "cycle"
    assert verify_path_coloring(g, EdgeColoring.from_classes([g.sorted_edges()]), allow_cycles=True).ok


def test_k5_minus_three_paths():
    g = k5_minus((0, 4))
    c = EdgeColoring.from_paths(K5M_PATHS)
    assert verify_path_coloring(g, c).ok
    assert verify_good_coloring(g, c, relaxed_budget=True).ok
    strict = verify_good_coloring(g, c)
    assert not strict.ok and strict.violations == [("budget", {"colors": 3, "budget": 2})]


def test_good_budget_examples():
    edge = Graph.from_edges(2, [(0, 1)])
    assert verify_good_coloring(edge, EdgeColoring({(0, 1): 0})).ok
    p5 = path_graph(5)
    assert verify_good_coloring(p5, EdgeColoring({e: 0 for e in p5.edges})).ok
    assert good_budget(p5) == 2 and good_budget(p5, True) == 3
    assert expected_relaxed(complete_graph(3)) and expected_relaxed(k5_minus())
    assert not expected_relaxed(complete_graph(4))


def test_domain_mismatch():
    g = complete_graph(3)
    with pytest.raises(ColoringDomainMismatch):
        verify_path_coloring(g, EdgeColoring({(0, 1): 0}))
    with pytest.raises(ColoringDomainMismatch):
        verify_path_coloring(g, EdgeColoring({(0, 1): 0, (1, 2): 0, (0, 2): 1, (2, 3): 1}))


def test_deviation_examples():
    c = EdgeColoring({(0, 1): 0})
    out = apply_deviation(c, 0, (0, 1), (0, 5, 1))
    assert out.shape(0).vertex_sequence in ((0, 5, 1), (1, 5, 0))
    x, a, b, y, u1, u2 = 0, 1, 2, 3, 4, 5
    c = EdgeColoring.from_paths([[x, a, b, y]])
    out = apply_deviation(c, 0, (a, b), (a, u1, u2, b))
    assert list(out.shape(0).vertex_sequence) in ([x, a, u1, u2, b, y], [y, b, u2, u1, a, x])


def test_deviation_through_class_vertex_is_invalid():
    c = EdgeColoring.from_paths([[0, 1, 2, 3]])
    out = apply_deviation(c, 0, (0, 1), (0, 3, 1))
    assert out.shape(0).kind is ShapeKind.Invalid


def test_deviation_errors():
    c = EdgeColoring.from_paths([[0, 1, 2]])
    with pytest.raises(NotOnClass):
        apply_deviation(c, 1, (0, 1), (0, 5, 1))
    with pytest.raises(BadSection):
        apply_deviation(c, 0, (0, 1), (0, 5, 6, 7, 1))
    with pytest.raises(BadSection):
        apply_deviation(c, 0, (0, 1), (0, 5, 2))


def test_extension_examples():
    c = EdgeColoring({(0, 1): 0})
    assert apply_extension(c, 0, [(1, 2)]).shape(0).vertex_sequence == (0, 1, 2)
    assert apply_extension(c, 0, [(1, 2), (2, 3)]).shape(0).vertex_sequence == (0, 1, 2, 3)
    with pytest.raises(CreatesBranch):
        apply_extension(EdgeColoring.from_paths([[0, 1, 2]]), 0, [(1, 5)])
    with pytest.raises(CreatesBranch):
        apply_extension(EdgeColoring.from_paths([[0, 1, 2]]), 0, [(2, 3), (3, 0)])


def test_is_exceptional_examples():
    cyc = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    # the other four edges of K5 minus {0,4}... here K5 minus {1,3}: chords 0-2, 2-4, 4-1, 0-3
    path = [(1, 4), (4, 2), (2, 0), (0, 3)]
    assert is_exceptional(cyc, path)
    assert not is_exceptional([(0, 1), (1, 2), (2, 0)], [(2, 3), (3, 4)])
    assert not is_exceptional(cyc, [(4, 2), (2, 0), (0, 3)])


def test_json_round_trip():
    g = k5_minus()
    c = EdgeColoring.from_paths(K5M_PATHS)
    back, data = coloring_from_json(c.to_json(g.n, True))
    assert data["relaxed_budget"] is True and data["n"] == 5
    assert back.edges == c.edges and back.count == 3
    with pytest.raises(ColoringDomainMismatch):
        coloring_from_json(json.dumps({"n": 3, "paths": [[0, 1, 2], [1, 2]]}))
    _, data = coloring_from_json(json.dumps({"n": 3, "paths": [[0, 1, 0]]}))
    assert data["repeated"] == [0]


@given(planar_graphs(lo=2, hi=8))
def test_oracle_witness_round_trips_through_json(g):
    w = min_path_decomposition(g).witness
    back, _ = coloring_from_json(w.to_json(g.n))
    assert verify_path_coloring(g, back).ok
    assert back.count == w.count


@given(planar_graphs(lo=2, hi=8))
def test_normalized_keeps_classes(g):
    w = min_path_decomposition(g).witness
    shifted = EdgeColoring({e: 10 + 3 * c for e, c in w.color_of.items()})
    norm = shifted.normalized()
    assert norm.colors() == list(range(w.count))
    assert sorted(map(tuple, norm.classes().values())) == sorted(map(tuple, w.classes().values()))
