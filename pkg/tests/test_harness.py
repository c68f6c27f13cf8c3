from __future__ import annotations

import json
import os

from gallai.coloring import EdgeColoring
from gallai.decompose import decompose
from gallai.graph import parse_graph
from gallai.harness import FuzzConfig, census, fuzz, fuzz_graph, iter_jsonl, summary_json


def test_census_small():
    s3 = census(3)
    assert (s3["count"], s3["relaxed_count"], s3["violations"]) == (4, 1, 0)
    assert s3["relaxed"] == ["Bw"]
    s2 = census(2)
    assert (s2["count"], s2["relaxed_count"]) == (1, 0)


def test_census_five_flags_every_k5_minus():
    s = census(5)
    assert s["count"] == 727 and s["violations"] == 0
    # 10 labelled copies of K5 minus an edge
    assert s["relaxed_count"] == 10
    assert all(parse_graph(g6).m == 9 for g6 in s["relaxed"])


def test_census_parallel_and_jsonl(tmp_path):
    path = tmp_path / "rows.jsonl"
    with open(path, "w") as fh:
        par = census(4, jobs=2, jsonl=fh)
    assert summary_json(par) == summary_json(census(4))
    rows = list(iter_jsonl(str(path)))
    assert len(rows) == 38
    assert {r["verdict"] for r in rows} == {"holds_strict"}
    assert set(rows[0]) == {"graph6", "min_paths", "verdict"}


def test_fuzz_summary_shape_and_determinism():
    cfg = FuzzConfig(n_lo=8, n_hi=12, count=12, seed=1)
    a = fuzz(cfg)
    b = fuzz(FuzzConfig(n_lo=8, n_hi=12, count=12, seed=1, jobs=2))
    assert summary_json(a) == summary_json(b)
    assert a["meets_bound_ratio"] == 1.0 and a["failures"] == []
    assert a["rule_histogram"] and sum(a["rule_histogram"].values()) == a["firings"]


def test_fuzz_graphs_depend_on_seed():
    cfg = FuzzConfig(seed=3)
    assert fuzz_graph(cfg, 0) == fuzz_graph(cfg, 0)
    assert fuzz_graph(cfg, 0) != fuzz_graph(FuzzConfig(seed=4), 0)


def broken_decompose(g, options=None):
    """A deliberately wrong decomposer: one color per edge."""
    res = decompose(g, options)
    res.coloring = EdgeColoring({e: i for i, e in enumerate(g.sorted_edges())})
    res.trace.meets_bound = False
    return res


def test_injected_bug_emits_reproducer(tmp_path):
    cfg = FuzzConfig(n_lo=8, n_hi=9, count=2, seed=5, out_dir=str(tmp_path), metamorphic=False)
    s = fuzz(cfg, decomposer=broken_decompose)
    assert s["meets_bound"] == 0 and len(s["failures"]) == 2
    rep = s["failures"][0]["reproducer"]
    assert os.path.exists(rep)
    with open(rep) as fh:
        data = json.load(fh)
    g = parse_graph(data["graph6"])
    assert g == fuzz_graph(cfg, data["index"])
    assert data["problems"] and "firings" in data["trace"]
