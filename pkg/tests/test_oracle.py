from __future__ import annotations

import itertools
import os
import subprocess
import sys

import networkx as nx
import pytest
from conftest import planar_graphs
from hypothesis import given, settings
from hypothesis import strategies as st

from gallai import _oracle_py
from gallai.coloring import ShapeKind, classify_class, verify_path_coloring
from gallai.errors import Timeout
from gallai.graph import (Graph, complete_graph, is_connected, is_planar, k5_minus, octahedron,
                          odd_vertices, path_graph, star_graph, to_graph6)
from gallai.oracle import (KERNEL, Verdict, connected_planar_masks, enumerate_connected_planar,
                           gallai_check, graph_to_mask, mask_to_graph, min_path_decomposition,
                           random_planar_graph)


def brute_min_paths(g: Graph) -> int:
    """Smallest k admitting an edge partition into k paths, by restricted
    growth strings over the edges."""
    edges = g.sorted_edges()
    best = len(edges)

    def ok(blocks):
        return all(classify_class(None, b).kind is ShapeKind.Path for b in blocks)

    def viable(b):
        # a partial block can still grow into a path unless it branches or closes
        deg = {}
        for u, v in b:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        if max(deg.values()) > 2:
            return False
        return classify_class(None, b).kind is not ShapeKind.Cycle

    def rec(i, blocks):
        nonlocal best
        if len(blocks) >= best:
            return
        if i == len(edges):
            if ok(blocks):
                best = len(blocks)
            return
        for b in blocks:
            b.append(edges[i])
            if viable(b):
                rec(i + 1, blocks)
            b.pop()
        blocks.append([edges[i]])
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return best


def test_brute_force_agrees_on_frozen_values():
    # values produced by brute_min_paths and frozen here
    assert brute_min_paths(complete_graph(4)) == 2
    assert brute_min_paths(octahedron()) == 3


@pytest.mark.parametrize("g,expected", [
    (complete_graph(3), 2),
    (path_graph(7), 1),
    (k5_minus(), 3),
    (complete_graph(4), 2),
    (octahedron(), 3),
    (star_graph(4), 2),
])
def test_min_paths_examples(g, expected):
    res = min_path_decomposition(g)
    assert res.min_paths == expected
    assert verify_path_coloring(g, res.witness).ok
    assert res.witness.count == expected


def test_gallai_check_examples():
    assert gallai_check(complete_graph(3)).verdict is Verdict.holds_relaxed
    assert gallai_check(k5_minus()).verdict is Verdict.holds_relaxed
    assert gallai_check(complete_graph(4)).verdict is Verdict.holds_strict
    assert gallai_check(star_graph(4)).verdict is Verdict.holds_strict


@settings(max_examples=40)
@given(planar_graphs(lo=2, hi=7))
def test_oracle_matches_brute_force(g):
    assert min_path_decomposition(g).min_paths == brute_min_paths(g)


@given(planar_graphs(lo=2, hi=9))
def test_witness_and_parity_bound(g):
    res = min_path_decomposition(g)
    assert verify_path_coloring(g, res.witness).ok
    assert res.witness.count == res.min_paths
    assert res.min_paths >= len(odd_vertices(g)) // 2


@given(planar_graphs(lo=3, hi=8), st.integers(0, 1000))
def test_oracle_changes_by_at_most_one_per_edge(g, pick):
    non = [e for e in itertools.combinations(range(g.n), 2) if e not in g.edges]
    non = [e for e in non if is_planar(g.with_edges(add=[e]))]
    if not non:
        return
    h = g.with_edges(add=[non[pick % len(non)]])
    a = min_path_decomposition(g).min_paths
    b = min_path_decomposition(h).min_paths
    assert abs(a - b) <= 1


def test_budget_timeout_carries_best():
    hits = 0
    for seed in range(40):
        g = random_planar_graph(10, 24, seed)
        try:
            min_path_decomposition(g, budget=1)
        except Timeout as exc:
            hits += 1
            assert exc.best.timed_out
            assert verify_path_coloring(g, exc.best.witness).ok
    assert hits > 0


def test_census_counts_small():
    assert [len(connected_planar_masks(n)) for n in (1, 2, 3, 4)] == [1, 1, 4, 38]
    assert len(connected_planar_masks(5)) == 727


def _brute_census(n):
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        g = Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        if is_connected(g) and nx.check_planarity(g.to_networkx())[0]:
            out.append(mask)
    return out


def test_census_matches_networkx_enumeration():
    for n in (3, 4, 5):
        assert connected_planar_masks(n) == _brute_census(n)


def test_census_ranges_partition():
    full = connected_planar_masks(6)
    assert len(full) == 26013
    parts = []
    for lo in range(0, 1 << 15, 5000):
        parts += connected_planar_masks(6, lo, min(lo + 5000, 1 << 15))
    assert parts == full


def test_enumeration_yields_graphs():
    gs = list(enumerate_connected_planar(3))
    assert len(gs) == 4
    assert sum(g.m == 3 for g in gs) == 1
    assert [g.m for g in enumerate_connected_planar(2)] == [1]


@given(planar_graphs(lo=2, hi=7))
def test_mask_round_trip(g):
    assert mask_to_graph(g.n, graph_to_mask(g)) == g


def test_random_planar_examples():
    g = random_planar_graph(1, 0, 5)
    assert (g.n, g.m) == (1, 0)
    g = random_planar_graph(5, 9, 11)
    assert g.m <= 9 and is_planar(g) and is_connected(g)
    assert random_planar_graph(20, 40, 7) == random_planar_graph(20, 40, 7)


@given(st.integers(1, 60), st.floats(0.8, 3.2), st.integers(0, 10_000))
def test_random_planar_is_connected_planar(n, d, seed):
    g = random_planar_graph(n, int(d * n), seed)
    assert g.n == n and is_connected(g) and is_planar(g)
    assert g.m <= max(n - 1, 3 * n - 6)


@given(planar_graphs(lo=2, hi=9))
def test_compiled_and_python_kernels_agree(g):
    edges = g.sorted_edges()
    k1 = _oracle_py.min_path_cover(g.n, edges, 10_000_000)[0]
    k2 = min_path_decomposition(g).min_paths
    assert k1 == k2


def test_kernel_selection_and_pure_python_override():
    assert KERNEL in ("compiled", "python")
    code = "from gallai.oracle import KERNEL, min_path_decomposition; from gallai.graph import octahedron;" \
           "print(KERNEL, min_path_decomposition(octahedron()).min_paths)"
    env = dict(os.environ, GALLAI_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "3"]


def test_graph6_of_census_graphs_is_unique():
    g6 = {to_graph6(g) for g in enumerate_connected_planar(4)}
    assert len(g6) == 38
