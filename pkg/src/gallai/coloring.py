"""Edge colorings whose classes are paths (or cycles mid-pipeline), their
validators, and the two recoloring primitives: deviation and extension."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import (BadSection, ColoringDomainMismatch, CreatesBranch, NotAnEndpoint,
                     NotOnClass, ShapeError)
from .graph import Edge, Graph, classify_exception, ExceptionKind, norm


class ShapeKind(str, Enum):
    Path = "Path"
    Cycle = "Cycle"
    Invalid = "Invalid"


@dataclass(frozen=True)
class ColorClassShape:
    kind: ShapeKind
    endpoints: tuple[int, int] | None = None
    vertex_sequence: tuple[int, ...] = ()
    reason: str = ""

    @property
    def length(self) -> int:
        """Edge count (not vertex count)."""
        return max(0, len(self.vertex_sequence) - 1)


def classify_class(g: Graph | None, edges: Iterable[Sequence[int]]) -> ColorClassShape:
    es = {norm(*e) for e in edges}
    if g is not None:
        missing = [e for e in es if e not in g.edges]
        if missing:
            return ColorClassShape(ShapeKind.Invalid, reason=f"edge {min(missing)} not in graph")
    if not es:
        return ColorClassShape(ShapeKind.Invalid, reason="empty class")
    nb: dict[int, list[int]] = defaultdict(list)
    for u, v in es:
        nb[u].append(v)
        nb[v].append(u)
    for v in sorted(nb):
        if len(nb[v]) > 2:
            return ColorClassShape(ShapeKind.Invalid, reason=f"vertex {v} has degree {len(nb[v])}")
    ends = sorted(v for v in nb if len(nb[v]) == 1)
    if len(ends) not in (0, 2):
        return ColorClassShape(ShapeKind.Invalid, reason="disconnected")
    start = ends[0] if ends else min(nb)
    seq = [start]
    prev = None
    cur = start
    while True:
        options = sorted(w for w in nb[cur] if w != prev)
        if prev is None and not ends:
            options = options[:1]
        if not options:
            break
        nxt = options[0]
        if nxt == start:
            seq.append(start)
            break
        seq.append(nxt)
        prev, cur = cur, nxt
    walked = len(seq) - 1
    if walked != len(es):
        return ColorClassShape(ShapeKind.Invalid, reason="disconnected")
    if ends:
        return ColorClassShape(ShapeKind.Path, (seq[0], seq[-1]), tuple(seq))
    return ColorClassShape(ShapeKind.Cycle, None, tuple(seq))


@dataclass(frozen=True)
class EdgeColoring:
    """Total map edge -> color id. Treated as an immutable value."""

    color_of: dict = field(hash=False)

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[Sequence[int]]]) -> "EdgeColoring":
        col = {}
        for i, es in enumerate(classes):
            for e in es:
                e = norm(*e)
                if e in col:
                    raise ValueError(f"edge {e} colored twice")
                col[e] = i
        return cls(col)

    @classmethod
    def from_paths(cls, paths: Iterable[Sequence[int]]) -> "EdgeColoring":
        return cls.from_classes([[(p[i], p[i + 1]) for i in range(len(p) - 1)] for p in paths])

    @property
    def edges(self) -> frozenset:
        return frozenset(self.color_of)

    def colors(self) -> list[int]:
        return sorted(set(self.color_of.values()))

    @property
    def count(self) -> int:
        return len(set(self.color_of.values()))

    def classes(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = defaultdict(list)
        for e, c in self.color_of.items():
            out[c].append(e)
        return {c: sorted(es) for c, es in sorted(out.items())}

    def class_edges(self, color: int) -> list[Edge]:
        return sorted(e for e, c in self.color_of.items() if c == color)

    def shape(self, color: int) -> ColorClassShape:
        return classify_class(None, self.class_edges(color))

    def shapes(self) -> dict[int, ColorClassShape]:
        return {c: classify_class(None, es) for c, es in self.classes().items()}

    def paths(self) -> list[list[int]]:
        out = []
        for c, sh in self.shapes().items():
            if sh.kind is ShapeKind.Invalid:
                raise ShapeError(f"color {c} is not a path or cycle: {sh.reason}")
            out.append(list(sh.vertex_sequence))
        return out

    def normalized(self) -> "EdgeColoring":
        """Renumber colors to 0..k-1 keeping their relative order."""
        remap = {c: i for i, c in enumerate(self.colors())}
        return EdgeColoring({e: remap[c] for e, c in self.color_of.items()})

    def fresh_color(self) -> int:
        return max(self.color_of.values(), default=-1) + 1

    def merged(self, other: "EdgeColoring") -> "EdgeColoring":
        """Disjoint union; the other coloring's ids are shifted past ours."""
        off = self.fresh_color()
        col = dict(self.color_of)
        for e, c in other.color_of.items():
            if e in col:
                raise ValueError(f"edge {e} colored twice")
            col[e] = c + off
        return EdgeColoring(col)

    def ends_at(self, v: int) -> list[int]:
        """Colors whose class is a path ending at v."""
        out = []
        for c, sh in self.shapes().items():
            if sh.kind is ShapeKind.Path and v in sh.endpoints:
                out.append(c)
        return out

    def to_json(self, n: int, relaxed_budget: bool = False) -> str:
        return json.dumps({"n": n, "paths": self.paths(), "relaxed_budget": relaxed_budget})

    def __len__(self) -> int:
        return len(self.color_of)


def coloring_from_json(text: str) -> tuple[EdgeColoring, dict]:
    """Read {"n", "paths", "relaxed_budget"}. The returned dict carries a
    ``repeated`` list naming paths that use some edge twice."""
    data = json.loads(text)
    paths = data.get("paths")
    if not isinstance(paths, list):
        raise ValueError("decomposition JSON needs a 'paths' list")
    col = {}
    repeated = []
    for i, p in enumerate(paths):
        if len(p) < 2:
            raise ValueError(f"path {i} has fewer than two vertices")
        for a, b in zip(p, p[1:]):
            e = norm(int(a), int(b))
            if e[0] == e[1]:
                raise ValueError(f"path {i} repeats vertex {a} consecutively")
            if e in col and col[e] != i:
                raise ColoringDomainMismatch(f"edge {e} appears in paths {col[e]} and {i}")
            if e in col:
                repeated.append(i)
            col[e] = i
    data["repeated"] = sorted(set(repeated))
    return EdgeColoring(col), data


@dataclass
class VerifyReport:
    ok: bool
    violations: list = field(default_factory=list)
    color_count: int = 0
    budget: int = 0

    def describe(self) -> str:
        if self.ok:
            return f"ok: {self.color_count} colors (budget {self.budget})"
        parts = [f"{rule}: {wit}" for rule, wit in self.violations]
        return "invalid: " + "; ".join(parts)


def _check_domain(g: Graph, c: EdgeColoring) -> None:
    if c.edges != g.edges:
        extra = sorted(c.edges - g.edges)
        missing = sorted(g.edges - c.edges)
        raise ColoringDomainMismatch(f"uncolored edges {missing[:5]}, foreign edges {extra[:5]}")


def verify_path_coloring(g: Graph, c: EdgeColoring, allow_cycles: bool = False) -> VerifyReport:
    _check_domain(g, c)
    violations = []
    for color, es in c.classes().items():
        sh = classify_class(g, es)
        if sh.kind is ShapeKind.Invalid:
            violations.append(("invalid-class", {"color": color, "reason": sh.reason, "edges": es}))
        elif sh.kind is ShapeKind.Cycle and not allow_cycles:
            violations.append(("cycle", {"color": color, "cycle": list(sh.vertex_sequence)}))
    return VerifyReport(not violations, violations, c.count, c.count)


def good_budget(g: Graph, relaxed_budget: bool = False) -> int:
    return (g.n + 1) // 2 if relaxed_budget else g.n // 2


def verify_good_coloring(g: Graph, c: EdgeColoring, relaxed_budget: bool = False) -> VerifyReport:
    rep = verify_path_coloring(g, c, allow_cycles=False)
    budget = good_budget(g, relaxed_budget)
    rep.budget = budget
    if c.count > budget:
        rep.violations.append(("budget", {"colors": c.count, "budget": budget}))
        rep.ok = False
    return rep


def expected_relaxed(g: Graph) -> bool:
    return classify_exception(g) is not ExceptionKind.Other


# ---------------------------------------------------------------- primitives

def apply_deviation(c: EdgeColoring, color: int, removed_edge: Sequence[int],
                    section: Sequence[int]) -> EdgeColoring:
    """Replace edge vv' of ``color`` by the section (v, u, v') or (v, u, u', v')."""
    v, w = removed_edge
    e = norm(v, w)
    if c.color_of.get(e) != color:
        raise NotOnClass(f"edge {e} does not carry color {color}")
    sec = list(section)
    if len(sec) not in (3, 4):
        raise BadSection(f"section must have length 2 or 3, got {len(sec) - 1}")
    if {sec[0], sec[-1]} != {v, w}:
        raise BadSection(f"section ends {sec[0]},{sec[-1]} do not match edge {e}")
    if len(set(sec)) != len(sec):
        raise BadSection("section repeats a vertex")
    col = dict(c.color_of)
    del col[e]
    for a, b in zip(sec, sec[1:]):
        f = norm(a, b)
        if f in col:
            raise BadSection(f"section edge {f} is already colored")
        col[f] = color
    return EdgeColoring(col)


def apply_extension(c: EdgeColoring, color: int, new_edges: Sequence[Sequence[int]]) -> EdgeColoring:
    """Grow the path of ``color`` at one endpoint along ``new_edges`` (in order)."""
    sh = c.shape(color)
    if sh.kind is not ShapeKind.Path:
        raise NotAnEndpoint(f"color {color} is not a path")
    if not new_edges:
        return c
    a, b = new_edges[0]
    if a in sh.endpoints:
        tip = a
    elif b in sh.endpoints:
        tip = b
    else:
        on_class = set(sh.vertex_sequence)
        if a in on_class or b in on_class:
            raise CreatesBranch(f"edge {(a, b)} attaches at an internal vertex of color {color}")
        raise NotAnEndpoint(f"edge {(a, b)} does not touch color {color}")
    visited = set(sh.vertex_sequence)
    col = dict(c.color_of)
    for x, y in new_edges:
        if x == tip:
            nxt = y
        elif y == tip:
            nxt = x
        else:
            raise NotAnEndpoint(f"edge {(x, y)} does not continue from {tip}")
        if nxt in visited:
            raise CreatesBranch(f"extension revisits vertex {nxt}")
        f = norm(x, y)
        if f in col:
            raise CreatesBranch(f"edge {f} is already colored")
        col[f] = color
        visited.add(nxt)
        tip = nxt
    return EdgeColoring(col)


def is_exceptional(cycle_edges: Iterable[Sequence[int]], path_edges: Iterable[Sequence[int]]) -> bool:
    cyc = classify_class(None, cycle_edges)
    pth = classify_class(None, path_edges)
    if cyc.kind is not ShapeKind.Cycle:
        raise ShapeError("first argument is not a cycle")
    if pth.kind is not ShapeKind.Path:
        raise ShapeError("second argument is not a path")
    if cyc.length != 5:
        return False
    cv = set(cyc.vertex_sequence)
    if not cv <= set(pth.vertex_sequence):
        return False
    union = {norm(*e) for e in cycle_edges} | {norm(*e) for e in path_edges}
    inside = [e for e in union if e[0] in cv and e[1] in cv]
    return len(inside) == 9
