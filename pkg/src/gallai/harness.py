"""Corpus runners behind ``gallai census`` and ``gallai fuzz``: per-instance
checks, order-preserving parallel map, deterministic summaries."""

from __future__ import annotations

import json
import multiprocessing
import os
import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TextIO

from .coloring import verify_path_coloring
from .decompose import DecomposeOptions, decompose
from .errors import NotFound, Timeout
from .graph import ExceptionKind, Graph, classify_exception, to_graph6
from .oracle import (Verdict, connected_planar_masks, gallai_check, mask_to_graph,
                     min_path_decomposition, random_planar_graph)
from .structure import certify_witness, find_configuration

CENSUS_CHUNK = 20_000
# published ceiling on unmatched configurations per attempted match
UNMATCHED_RATIO_LIMIT = 0.05


def _pmap(fn: Callable, items: list, jobs: int) -> Iterator:
    """Ordered lazy map; with jobs > 1 the items are spread over worker processes."""
    if jobs <= 1 or len(items) <= 1:
        yield from map(fn, items)
        return
    ctx = multiprocessing.get_context("fork" if os.name == "posix" else "spawn")
    with ctx.Pool(min(jobs, len(items))) as pool:
        yield from pool.imap(fn, items, chunksize=1)


# ---------------------------------------------------------------- census

def census_instance(g: Graph, options: DecomposeOptions | None = None,
                    rule_threshold: int | None = None) -> dict:
    """Oracle verdict plus decompose on one enumerated graph. With
    ``rule_threshold`` a second decompose runs with the exact search limited to
    that many vertices, so the reduction rules fire on the enumerated graphs."""
    opts = options or DecomposeOptions(check_input=False)
    kind = classify_exception(g)
    problems = []
    check = gallai_check(g)
    if check.verdict is Verdict.violated:
        problems.append(f"oracle minimum {check.min_paths} above the bound")
    if kind is not ExceptionKind.Other and check.verdict is not Verdict.holds_relaxed:
        problems.append(f"exceptional graph with oracle minimum {check.min_paths}")
    if kind is ExceptionKind.Other and check.verdict is not Verdict.holds_strict:
        problems.append(f"non-exceptional graph needs {check.min_paths} paths")
    res = decompose(g, opts)
    c, tr = res.coloring, res.trace
    if not verify_path_coloring(g, c).ok:
        problems.append("output is not a path coloring")
    if not tr.meets_bound:
        problems.append(f"{c.count} paths, bound {tr.bound}")
    if c.count < check.min_paths:
        problems.append(f"{c.count} paths, below the oracle minimum {check.min_paths}")
    firings, violations = len(tr.firings), len(tr.violations)
    if rule_threshold is not None and g.n > rule_threshold:
        forced = decompose(g, DecomposeOptions(exact_threshold=rule_threshold, check_input=False))
        firings += len(forced.trace.firings)
        violations += len(forced.trace.violations)
        if not forced.trace.meets_bound:
            problems.append(f"rule-driven run: {forced.coloring.count} paths, bound {forced.trace.bound}")
    if violations:
        problems.append(f"{violations} rule firings broke the validity contract")
    structure, witness = [], None
    if g.n >= 3:
        try:
            witness = find_configuration(g)
            structure = certify_witness(g, witness)
        except NotFound as exc:
            structure = [f"no configuration: {exc}"]
    problems += structure
    return {"graph6": to_graph6(g), "min_paths": check.min_paths, "verdict": check.verdict.value,
            "paths": c.count, "relaxed": tr.relaxed, "fallbacks": len(tr.fallbacks),
            "meets_bound": tr.meets_bound, "firings": firings,
            "violations": violations, "structure_failures": len(structure),
            "witness": witness.kind if witness else None, "problems": problems}


def _census_chunk(args) -> dict:
    n, lo, hi, rows, rule_threshold = args
    out = {"count": 0, "meets_bound": 0, "fallbacks": 0, "firings": 0, "firing_violations": 0,
           "structure_failures": 0, "relaxed": [], "cii": [], "failures": [], "rows": []}
    for mask in connected_planar_masks(n, lo, hi):
        r = census_instance(mask_to_graph(n, mask), rule_threshold=rule_threshold)
        out["count"] += 1
        out["meets_bound"] += r["meets_bound"]
        out["fallbacks"] += r["fallbacks"]
        out["firings"] += r["firings"]
        out["firing_violations"] += r["violations"]
        out["structure_failures"] += bool(r["structure_failures"])
        if r["witness"] == "CII":
            out["cii"].append(r["graph6"])
        if r["relaxed"]:
            out["relaxed"].append(r["graph6"])
        if r["problems"]:
            out["failures"].append({"graph6": r["graph6"], "problems": r["problems"]})
        if rows:
            out["rows"].append(json.dumps({"graph6": r["graph6"], "min_paths": r["min_paths"],
                                           "verdict": r["verdict"]}, sort_keys=True))
    return out


def census(n: int, jobs: int = 1, jsonl: TextIO | None = None,
           rule_threshold: int | None = None) -> dict:
    """Every labelled connected planar graph on n <= 7 vertices. With ``jsonl``
    one {graph6, min_paths, verdict} line per graph is streamed there."""
    if not 1 <= n <= 7:
        raise ValueError("census needs 1 <= n <= 7")
    top = 1 << (n * (n - 1) // 2)
    step = min(CENSUS_CHUNK, top)
    chunks = [(n, lo, min(lo + step, top), jsonl is not None, rule_threshold)
              for lo in range(0, top, step)]
    counters = ("count", "meets_bound", "fallbacks", "firings", "firing_violations",
                "structure_failures")
    summary = {"n": n, "rule_threshold": rule_threshold, **{k: 0 for k in counters}, "relaxed": [], "cii": [], "failures": []}
    for p in _pmap(_census_chunk, chunks, jobs):
        for k in counters:
            summary[k] += p[k]
        for k in ("relaxed", "cii", "failures"):
            summary[k] += p[k]
        for line in p["rows"]:
            jsonl.write(line + "\n")
    summary["relaxed"].sort()
    summary["cii"].sort()
    summary["failures"].sort(key=lambda v: v["graph6"])
    summary["relaxed_count"] = len(summary["relaxed"])
    summary["violations"] = len(summary["failures"])
    return summary


# ---------------------------------------------------------------- fuzz

@dataclass
class FuzzConfig:
    n_lo: int = 8
    n_hi: int = 12
    density: float = 2.0
    count: int = 100
    seed: int = 0
    jobs: int = 1
    oracle_edges: int = 24
    metamorphic: bool = True
    out_dir: str | None = None
    jsonl: str | None = None


def fuzz_graph(cfg: FuzzConfig, i: int) -> Graph:
    rng = random.Random(f"fuzz:{cfg.seed}:{i}")
    n = rng.randint(cfg.n_lo, cfg.n_hi)
    m = max(n - 1, round(cfg.density * n))
    return random_planar_graph(n, m, rng.randrange(1 << 30))


def _relabel(g: Graph, seed: str) -> tuple[Graph, list]:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return Graph(g.n, frozenset(tuple(sorted((perm[a], perm[b]))) for a, b in g.edges)), perm


def check_instance(g: Graph, cfg: FuzzConfig, tag: str,
                   decomposer: Callable = decompose) -> tuple[dict, list, object]:
    """Decompose with every check on; returns (record, problems, trace)."""
    res = decomposer(g, DecomposeOptions())
    c, tr = res.coloring, res.trace
    problems = []
    rep = verify_path_coloring(g, c)
    if not rep.ok:
        problems.append(f"not a path coloring: {rep.violations[:2]}")
    if not tr.meets_bound:
        problems.append(f"{c.count} paths, bound {tr.bound}")
    if tr.violations:
        problems.append(f"validity contract broken: {tr.violations[:2]}")
    for f in tr.firings:
        if f.new_colors > f.allowance:
            problems.append(f"{f.rule_id} used {f.new_colors} new colors, allowance {f.allowance}")
    if g.m <= cfg.oracle_edges:
        try:
            lo = min_path_decomposition(g).min_paths
            if c.count < lo:
                problems.append(f"{c.count} paths, below the oracle minimum {lo}")
        except Timeout:
            pass
    if cfg.metamorphic:
        h, _ = _relabel(g, tag)
        r2 = decomposer(h, DecomposeOptions())
        if not verify_path_coloring(h, r2.coloring).ok:
            problems.append("relabelled copy: not a path coloring")
        if not r2.trace.meets_bound:
            problems.append(f"relabelled copy: {r2.coloring.count} paths, bound {r2.trace.bound}")
    record = {"graph6": to_graph6(g), "n": g.n, "m": g.m, "paths": c.count, "bound": tr.bound,
              "meets_bound": tr.meets_bound, "rules": tr.rule_counts(),
              "fallbacks": len(tr.fallbacks), "unmatched": len(tr.unmatched),
              "firings": len(tr.firings), "ok": not problems}
    return record, problems, tr


def _fuzz_one(args) -> dict:
    cfg, i, decomposer = args
    g = fuzz_graph(cfg, i)
    record, problems, tr = check_instance(g, cfg, f"fuzz:{cfg.seed}:{i}:relabel", decomposer)
    record["index"] = i
    if problems:
        record["problems"] = problems
        record["trace"] = tr.to_dict()
    return record


def write_reproducer(out_dir: str, cfg: FuzzConfig, record: dict) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"fuzz-{cfg.seed}-{record['index']}.json")
    with open(path, "w") as fh:
        json.dump({"graph6": record["graph6"], "problems": record["problems"],
                   "trace": record["trace"], "seed": cfg.seed, "index": record["index"]},
                  fh, sort_keys=True, indent=1)
    return path


def fuzz(cfg: FuzzConfig, decomposer: Callable = decompose) -> dict:
    records = list(_pmap(_fuzz_one, [(cfg, i, decomposer) for i in range(cfg.count)], cfg.jobs))
    rules: Counter = Counter()
    failures = []
    for rec in records:
        rules.update(rec["rules"])
        if rec.get("problems"):
            entry = {"index": rec["index"], "graph6": rec["graph6"], "problems": rec["problems"]}
            if cfg.out_dir:
                entry["reproducer"] = write_reproducer(cfg.out_dir, cfg, rec)
            failures.append(entry)
    if cfg.jsonl:
        with open(cfg.jsonl, "w") as fh:
            for rec in records:
                slim = {k: v for k, v in rec.items() if k != "trace"}
                fh.write(json.dumps(slim, sort_keys=True) + "\n")
    met = sum(r["meets_bound"] for r in records)
    firings = sum(r["firings"] for r in records)
    unmatched = sum(r["unmatched"] for r in records)
    return {"count": cfg.count, "seed": cfg.seed, "n_range": [cfg.n_lo, cfg.n_hi],
            "m_density": cfg.density, "meets_bound": met,
            "meets_bound_ratio": round(met / cfg.count, 6) if cfg.count else 1.0,
            "fallbacks": sum(r["fallbacks"] for r in records),
            "unmatched": unmatched, "firings": firings,
            "unmatched_ratio": round(unmatched / max(1, firings + unmatched), 6),
            "violations": len(failures),
            "rule_histogram": dict(sorted(rules.items())), "failures": failures}


def summary_json(summary: dict) -> str:
    return json.dumps(summary, sort_keys=True)


def iter_jsonl(path: str) -> Iterable[dict]:
    with open(path) as fh:
        for line in fh:
            if line.strip():
                yield json.loads(line)
