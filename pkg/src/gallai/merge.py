"""Repacking one cycle plus one path into two paths, and the loop that uses
it to clear every cycle class from a mixed coloring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _oracle_py
from .coloring import EdgeColoring, ShapeKind, classify_class
from .errors import NoCompanionPath, PreconditionViolated
from .graph import Graph, norm


@dataclass(frozen=True)
class MergeResult:
    exceptional: bool
    p1: tuple = ()
    p2: tuple = ()

    @property
    def kind(self) -> str:
        return "Exceptional" if self.exceptional else "TwoPaths"


def two_path_split(edges: Iterable[Sequence[int]]) -> tuple[list[int], list[int]] | None:
    """Partition an edge set into exactly two paths, or None. Exhaustive."""
    es = sorted({norm(*e) for e in edges})
    verts = sorted({v for e in es for v in e})
    idx = {v: i for i, v in enumerate(verts)}
    local = [(idx[u], idx[v]) for u, v in es]
    ctx = _oracle_py._Ctx(len(verts), local, 1 << 40)
    full = (1 << len(local)) - 1
    if _oracle_py._lower_bound(ctx, full) > 2:
        return None
    for p in sorted(_oracle_py._paths_through(ctx, full, 0), key=lambda x: (-bin(x).count("1"), x)):
        rest = full & ~p
        if rest and _oracle_py._is_path(ctx, rest):
            out = []
            for mask in (p, rest):
                part = [es[i] for i in range(len(es)) if mask >> i & 1]
                out.append(list(classify_class(None, part).vertex_sequence))
            return out[0], out[1]
    return None


def merge_cycle_path(g: Graph | None, cycle: Iterable[Sequence[int]],
                     path: Iterable[Sequence[int]], max_shared: int = 5) -> MergeResult:
    c_edges = {norm(*e) for e in cycle}
    p_edges = {norm(*e) for e in path}
    cs = classify_class(g, c_edges)
    ps = classify_class(g, p_edges)
    if cs.kind is not ShapeKind.Cycle:
        raise PreconditionViolated("first argument is not a cycle of the graph")
    if ps.kind is not ShapeKind.Path:
        raise PreconditionViolated("second argument is not a path of the graph")
    if c_edges & p_edges:
        raise PreconditionViolated("cycle and path share an edge")
    shared = set(cs.vertex_sequence) & set(ps.vertex_sequence)
    if not 1 <= len(shared) <= max_shared:
        raise PreconditionViolated(f"cycle and path share {len(shared)} vertices")
    split = two_path_split(c_edges | p_edges)
    if split is None:
        return MergeResult(True)
    return MergeResult(False, tuple(split[0]), tuple(split[1]))


def eliminate_cycles(g: Graph, c: EdgeColoring, protected: Iterable[int] = (),
                     max_shared: int = 5) -> EdgeColoring:
    """Merge each cycle class with a companion path class until none is left.

    Companions are tried by increasing color id; colors in ``protected`` are
    never used as companions. The color count is preserved.
    """
    keep_out = set(protected)
    cur = c
    shapes = cur.shapes()
    cycles = [col for col, sh in shapes.items() if sh.kind is ShapeKind.Cycle]
    seen: set[int] = set()
    for col in cycles:
        vs = set(shapes[col].vertex_sequence)
        if vs & seen:
            raise PreconditionViolated("cycle classes are not vertex-disjoint")
        seen |= vs
    for col in cycles:
        shapes = cur.shapes()
        cyc = shapes[col]
        cyc_edges = cur.class_edges(col)
        done = False
        for other, sh in shapes.items():
            if other == col or other in keep_out or sh.kind is not ShapeKind.Path:
                continue
            shared = set(cyc.vertex_sequence) & set(sh.vertex_sequence)
            if not 1 <= len(shared) <= max_shared:
                continue
            res = merge_cycle_path(g, cyc_edges, cur.class_edges(other), max_shared)
            if res.exceptional:
                continue
            col_map = dict(cur.color_of)
            for a, b in zip(res.p1, res.p1[1:]):
                col_map[norm(a, b)] = col
            for a, b in zip(res.p2, res.p2[1:]):
                col_map[norm(a, b)] = other
            cur = EdgeColoring(col_map)
            done = True
            break
        if not done:
            raise NoCompanionPath(col, f"cycle {list(cyc.vertex_sequence)}")
    return cur

