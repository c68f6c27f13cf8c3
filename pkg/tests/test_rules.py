from __future__ import annotations

import itertools

import pytest
from conftest import planar_graphs
from hypothesis import given, settings

from gallai.coloring import verify_path_coloring
from gallai.errors import UnmatchedCase
from gallai.graph import Graph, complete_graph, is_planar, k5_minus, path_graph
from gallai.oracle import min_path_decomposition
from gallai.rules import (Edit, RecolorInfo, apply_rule, edit_candidates, load_catalog,
                          match_ci_rule, rule, rule_ids, safety_recolor, select_cii_composite)
from gallai.rules.catalog import EDIT_KINDS, STEP_OPS
from gallai.subdivision import K4, ProblemReport, Subdivision, classify_problems, find_k_subdivision

K4_PATHS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
LADDER_EDGES = [(0, 4), (4, 1), (1, 5), (5, 2), (2, 6), (6, 3), (3, 7), (7, 0), (0, 8), (8, 1),
                (2, 9), (9, 3)]


def oracle_solve(sub: Graph):
    return min_path_decomposition(sub).witness


# ---------------------------------------------------------------- catalog

def test_catalog_loads_and_is_consistent():
    cat = load_catalog()
    assert len(cat) == len(rule_ids("CI")) + len(rule_ids("CII"))
    for r in cat.values():
        assert r.family in ("CI", "CII")
        assert r.budget <= r.removed_count // 2
        assert all(s.op in STEP_OPS for s in r.program.steps)
        assert all(e in EDIT_KINDS for e in r.edits)
    assert {r.removed_count for r in cat.values() if r.family == "CII"} == {4}


def test_ci_rules_remove_the_special_pair():
    for rid in rule_ids("CI"):
        r = rule(rid)
        assert r.removed_count == (1 if rid == "Ctilde" else 2)


# ---------------------------------------------------------------- CI matching

def test_k5_minus_degree_three_pair():
    m = match_ci_rule(k5_minus((0, 4)), 0, 4)
    assert m.rule_id == "Xl" and m.family == "CI"


def test_adjacent_degree_two_pair_with_shared_neighbor():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)])
    m = match_ci_rule(g, 0, 1)
    assert m.rule_id == "Xr" and m.binding["v"] == 2


def test_distant_pair_is_composite():
    g = Graph.from_edges(9, sorted(path_graph(9).edges) + [(1, 3), (5, 7)])
    m = match_ci_rule(g, 0, 8)
    assert m.rule_id == "CNP+CNP"
    assert m.path[0] == 0 and m.path[-1] == 8 and len(m.path) == 7
    red, undo = apply_rule(g, m.with_edits(edit_candidates(g, m)[0]))
    assert set(undo.path_edges) <= undo.freed
    assert undo.vertex_count == g.n - 2
    assert all(red.degree(v) == 0 for v in (0, 8))


@settings(max_examples=40)
@given(planar_graphs(lo=6, hi=16))
def test_match_apply_contract(g):
    low = [v for v in range(g.n) if g.degree(v) <= 4]
    for u1, u2 in itertools.islice(itertools.combinations(low, 2), 6):
        try:
            m = match_ci_rule(g, u1, u2)
        except UnmatchedCase as exc:
            assert exc.transcript
            continue
        r = rule(m.rule_id)
        assert set(m.special) <= {u1, u2} and len(m.special) == r.removed_count
        for edits in edit_candidates(g, m, 4):
            red, undo = apply_rule(g, m.with_edits(edits))
            assert undo.vertex_count == g.n - r.removed_count
            assert all(red.degree(v) == 0 for v in undo.removed_vertices)
            assert undo.freed == g.edges - red.edges
            assert is_planar(red)


# ---------------------------------------------------------------- recoloring

def test_safety_merges_triangle_component():
    # removing 0, 1 and the path 0-5-6-1 leaves a triangle {2,3,4}
    g = Graph.from_edges(9, [(2, 3), (3, 4), (2, 4), (5, 6), (6, 7), (7, 8), (0, 2), (0, 5),
                             (1, 6), (1, 8), (5, 7)])
    m = match_ci_rule(g, 0, 1)
    mm = m.with_edits(edit_candidates(g, m)[0])
    red, undo = apply_rule(g, mm)
    assert sorted(red.edges)[:3] == [(2, 3), (2, 4), (3, 4)]
    info = RecolorInfo()
    c = safety_recolor(g, mm, red, solve=oracle_solve, undo=undo, info=info)
    assert info.mode == "cycles-merged"
    assert verify_path_coloring(g, c).ok
    assert c.count - info.pc_count <= 1


def test_safety_without_exceptional_components_is_plain_recolor():
    g = Graph.from_edges(9, sorted(path_graph(9).edges) + [(1, 3), (5, 7)])
    m = match_ci_rule(g, 0, 8)
    mm = m.with_edits(edit_candidates(g, m)[0])
    red, undo = apply_rule(g, mm)
    info = RecolorInfo()
    c = safety_recolor(g, mm, red, solve=oracle_solve, undo=undo, info=info)
    assert info.mode == "recolor" and verify_path_coloring(g, c).ok


@settings(max_examples=30)
@given(planar_graphs(lo=9, hi=14))
def test_recoloring_respects_budget(g):
    u1, u2 = sorted((g.degree(v), v) for v in range(g.n))[:2]
    try:
        m = match_ci_rule(g, u1[1], u2[1])
    except UnmatchedCase:
        return
    r = rule(m.rule_id)
    for edits in edit_candidates(g, m, 6):
        mm = m.with_edits(edits)
        red, undo = apply_rule(g, mm)
        info = RecolorInfo()
        try:
            c = safety_recolor(g, mm, red, solve=oracle_solve, undo=undo, info=info)
        except Exception:
            continue
        assert verify_path_coloring(g, c).ok
        assert c.count - info.pc_count <= r.removed_count // 2
        return


def test_edit_objects():
    e = Edit("add", (2, 5), (2, 9, 5))
    assert e.to_dict() == {"kind": "add", "edge": [2, 5], "via": [2, 9, 5]}


# ---------------------------------------------------------------- CII dispatch

def _k4_sub():
    return Subdivision(K4, (0, 1, 2, 3), K4_PATHS)


def test_dispatch_j1_on_plain_k4():
    g = complete_graph(4)
    m = select_cii_composite(g, range(4), _k4_sub(), ProblemReport())
    assert m.rule_id == "J1" and m.family == "CII"


def test_dispatch_d4_four_problems_disjoint_zero_paths():
    # problems on paths 0~2, 0~3, 1~2, 1~3; paths 0~1 and 2~3 carry none
    dist = [(1, 1, (8, 9)), (2, 2, (10, 11)), (3, 3, (12, 13)), (0, 4, (14, 15))]
    m = select_cii_composite(complete_graph(4), range(4), _k4_sub(), ProblemReport(distant=dist))
    assert m.rule_id == "D4"
    assert {m.binding["u1"], m.binding["u2"]} in ({0, 1}, {2, 3})
    assert m.constraints["inactivate"] == [(1, 1), (2, 2), (3, 3), (0, 4)]


def test_dispatch_r9_shared_neighbor_on_parallel_path():
    # ladder C4+ with vertex 9 (inside a 2~3 parallel path) joined to roots 0 and 1
    g = Graph.from_edges(10, LADDER_EDGES + [(0, 9), (1, 9)])
    s = find_k_subdivision(Graph.from_edges(10, LADDER_EDGES), range(4))
    rep = classify_problems(g, s)
    assert rep.close == [(0, 1)]
    assert select_cii_composite(g, range(4), s, rep).rule_id == "R9"


def test_dispatch_rejects_foreign_family():
    with pytest.raises(UnmatchedCase):
        select_cii_composite(complete_graph(4), (0, 1, 2, 5), _k4_sub(), ProblemReport())
