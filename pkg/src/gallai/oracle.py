"""Independent ground truth: exact minimum path decompositions, the labelled
census of small connected planar graphs, and a seeded random planar generator.

The search kernels come from the compiled ``_kernel`` module when it was
built, otherwise from ``_oracle_py``. Set GALLAI_PURE_PYTHON=1 to force the
fallback at import time.
"""

from __future__ import annotations

import functools
import itertools
import os
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import networkx as nx

from . import _oracle_py
from .coloring import EdgeColoring
from .errors import Timeout
from .graph import ExceptionKind, Graph, classify_exception, is_connected, norm

if os.environ.get("GALLAI_PURE_PYTHON") == "1":
    _kernel = _oracle_py
    KERNEL = "python"
else:
    try:
        from . import _kernel  # type: ignore[attr-defined]
        KERNEL = "compiled"
    except ImportError:
        _kernel = _oracle_py
        KERNEL = "python"

DEFAULT_BUDGET = 10_000_000


def node_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("GALLAI_NODE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class OracleResult:
    min_paths: int
    witness: EdgeColoring
    nodes_explored: int
    timed_out: bool = False


def _masks_to_coloring(edges: list, masks: list[int]) -> EdgeColoring:
    col = {}
    for c, mask in enumerate(masks):
        i = 0
        while mask:
            if mask & 1:
                col[edges[i]] = c
            mask >>= 1
            i += 1
    return EdgeColoring(col)


@functools.lru_cache(maxsize=4096)
def _cover_cached(n: int, edges: tuple, budget: int, backend: str):
    impl = _oracle_py if backend == "python" else _kernel
    if impl is not _oracle_py and (len(edges) > 64 or n > 64):
        impl = _oracle_py
    return impl.min_path_cover(n, list(edges), budget)


def min_path_decomposition(g: Graph, budget: int | None = None, backend: str | None = None) -> OracleResult:
    """Exact minimum number of paths partitioning E(g), with a witness."""
    edges = tuple(g.sorted_edges())
    k, masks, nodes, timed_out = _cover_cached(g.n, edges, node_budget(budget), backend or KERNEL)
    res = OracleResult(k, _masks_to_coloring(list(edges), masks), nodes, timed_out)
    if timed_out:
        raise Timeout(f"node budget exhausted after {nodes} nodes", best=res)
    return res


class Verdict(str, Enum):
    holds_strict = "holds_strict"
    holds_relaxed = "holds_relaxed"
    violated = "violated"


@dataclass
class GallaiCheck:
    verdict: Verdict
    min_paths: int
    witness: EdgeColoring


def gallai_check(g: Graph, budget: int | None = None) -> GallaiCheck:
    res = min_path_decomposition(g, budget)
    if res.min_paths <= g.n // 2:
        verdict = Verdict.holds_strict
    elif res.min_paths == (g.n + 1) // 2 and classify_exception(g) is not ExceptionKind.Other:
        verdict = Verdict.holds_relaxed
    else:
        verdict = Verdict.violated
    return GallaiCheck(verdict, res.min_paths, res.witness)


# ---------------------------------------------------------------- census

@functools.lru_cache(maxsize=None)
def _forbidden(n: int) -> tuple:
    return tuple(_oracle_py.forbidden_masks(n)) if n >= 5 else ()


def mask_to_graph(n: int, mask: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def graph_to_mask(g: Graph) -> int:
    idx = _oracle_py.pair_index(g.n)
    return sum(1 << idx[e] for e in g.edges)


def connected_planar_masks(n: int, lo: int = 0, hi: int | None = None) -> list[int]:
    if n > 7:
        raise ValueError("labelled census is limited to n <= 7")
    return _kernel.connected_planar_masks(n, list(_forbidden(n)), lo, hi)


def enumerate_connected_planar(n: int) -> Iterator[Graph]:
    """Every labelled connected planar graph on n vertices, by ascending
    edge-set bitmask (bit i is the i-th pair in lexicographic order)."""
    if n < 1:
        return
    for mask in connected_planar_masks(n):
        yield mask_to_graph(n, mask)


# ---------------------------------------------------------------- random

def random_planar_graph(n: int, target_m: int, seed: int, retry_cap: int | None = None) -> Graph:
    """Connected planar graph: a random spanning tree embedded in the plane,
    then chords added inside random faces, so planarity holds by
    construction. Deterministic per (n, target_m, seed)."""
    rng = random.Random(f"{n}:{target_m}:{seed}")
    if n <= 1:
        return Graph(max(n, 0), frozenset())
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    rot: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add(norm(u, v))
        rot[u].insert(rng.randrange(len(rot[u]) + 1), v)
        rot[v].insert(rng.randrange(len(rot[v]) + 1), u)
    limit = min(target_m, 3 * n - 6 if n >= 3 else n - 1)
    tries = 0
    cap = retry_cap if retry_cap is not None else 10 * max(limit, 1) + 50
    while len(edges) < limit and tries < cap:
        tries += 1
        a, b = rng.choice(sorted(edges))
        if rng.random() < 0.5:
            a, b = b, a
        # walk the face to the left of dart a->b; corner k is (vertex, arrived-from)
        corners = []
        u, v = a, b
        while True:
            corners.append((v, u))
            r = rot[v]
            w = r[(r.index(u) + 1) % len(r)]
            u, v = v, w
            if (u, v) == (a, b):
                break
        if len(corners) < 4:
            continue
        i, j = rng.sample(range(len(corners)), 2)
        (x, xp), (y, yp) = corners[i], corners[j]
        if x == y or norm(x, y) in edges:
            continue
        rot[x].insert(rot[x].index(xp) + 1, y)
        rot[y].insert(rot[y].index(yp) + 1, x)
        edges.add(norm(x, y))
    g = Graph(n, frozenset(edges))
    assert is_connected(g)
    return g

