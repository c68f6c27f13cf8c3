"""Applying a matched rule: reduced graph, recoloring program, safety procedure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from ..coloring import EdgeColoring, ShapeKind, classify_class, verify_path_coloring
from ..errors import (NoCompanionPath, PlanarityLost, PreconditionViolated, RecoloringInvalid,
                      Unsatisfiable)
from ..graph import ExceptionKind, Graph, classify_exception, components_avoiding, is_planar, norm
from ..merge import eliminate_cycles
from ..subdivision import all_two_colorings, two_color
from .catalog import Rule, rule
from .model import Edit, RuleMatch, add_edit

DEFAULT_SEARCH_NODES = 20_000
DEFAULT_EDIT_SETS = 24
# freeing nearby colors makes the search much wider; keep those attempts short
WIDE_SEARCH_NODES = 500
_EDIT_SET_POOL = 4096


@dataclass
class Reduction:
    reduced: Graph
    removed_vertices: tuple
    freed: frozenset        # edges of g that the reduced graph lacks
    added: tuple            # edits whose edge the reduced graph has: new edges and kept ones
    path_edges: tuple = ()

    @property
    def vertex_count(self) -> int:
        """Vertices left once the removed ones are gone (their ids stay, isolated)."""
        return self.reduced.n - len(self.removed_vertices)


def _resolve(m: RuleMatch, x):
    if isinstance(x, str):
        if x not in m.binding:
            raise PreconditionViolated(f"rule {m.rule_id} has no role {x!r} bound")
        return m.binding[x]
    return int(x)


def _path_edges(path) -> list:
    return [norm(a, b) for a, b in zip(path, path[1:])] if path else []


def apply_rule(g: Graph, m: RuleMatch) -> tuple[Graph, Reduction]:
    """Reduced graph (vertex ids kept, special vertices left isolated) and the
    context the recoloring needs."""
    r = rule(m.rule_id)
    special = tuple(_resolve(m, x) for x in r.remove)
    if set(special) != set(m.special):
        raise PreconditionViolated(f"rule {r.id} removes {special}, match names {m.special}")
    gone = set(special)
    drop = {e for e in g.edges if e[0] in gone or e[1] in gone}
    path_edges = ()
    if r.remove_path:
        if not m.path:
            raise PreconditionViolated(f"rule {r.id} needs a shortest path")
        path_edges = tuple(_path_edges(m.path))
        drop |= set(path_edges)
    if r.remove_subdivision:
        if m.subdivision is None:
            raise PreconditionViolated(f"rule {r.id} needs a subdivision")
        drop |= set(m.subdivision.edges())
    added = [add_edit(_resolve(m, a), _resolve(m, b)) for a, b in r.add]
    kept: list = []
    for ed in m.edits:
        if ed.kind == "add":
            added.append(ed)
        elif ed.kind == "remove":
            if ed.edge not in g.edges:
                raise PreconditionViolated(f"edit removes the non-edge {ed.edge}")
            drop.add(ed.edge)
        elif ed.kind == "keep":
            # an edge of the removed structure stays, standing for its via section
            if ed.edge not in drop or set(ed.edge) & gone:
                raise PreconditionViolated(f"edit keeps {ed.edge}, which the rule does not remove")
            drop.discard(ed.edge)
            kept.append(ed)
        else:
            raise PreconditionViolated(f"unknown edit kind {ed.kind}")
    new_edges = set()
    for ed in added:
        a, b = ed.edge
        if a in gone or b in gone or a == b:
            raise PreconditionViolated(f"added edge {ed.edge} touches a removed vertex")
        if ed.edge in g.edges or ed.edge in new_edges:
            raise PreconditionViolated(f"added edge {ed.edge} already present")
        new_edges.add(ed.edge)
    reduced = Graph(g.n, frozenset((g.edges - drop) | new_edges))
    if new_edges and not is_planar(reduced):
        raise PlanarityLost(f"rule {r.id}: adding {sorted(new_edges)} breaks planarity")
    return reduced, Reduction(reduced, special, frozenset(drop), tuple(added + kept), path_edges)


# ---------------------------------------------------------------- edit candidates

def _pair_edits(g: Graph, u: int, gone: set, taken=frozenset()) -> list:
    nb = [x for x in g.adj[u] if x not in gone]
    out = []
    for a, b in itertools.combinations(nb, 2):
        if g.has_edge(a, b):
            out.append(Edit("remove", norm(a, b)))
        elif norm(a, u) not in taken and norm(u, b) not in taken:
            out.append(add_edit(a, b, (a, u, b)))
    # deviations first: they keep the most of the pre-coloring
    return sorted(out, key=lambda e: e.kind != "add")


def edit_candidates(g: Graph, m: RuleMatch, limit: int = DEFAULT_EDIT_SETS) -> list[tuple]:
    """Edit sets to try, best first. Each special vertex carries at most one
    edit."""
    r = rule(m.rule_id)
    gone = set(m.special)
    taken = frozenset(_path_edges(m.path)) if r.remove_path else frozenset()
    singles: list[tuple[Edit, frozenset]] = []
    for fam in r.edits:
        if fam == "pair":
            for u in m.special:
                singles += [(e, frozenset([u])) for e in _pair_edits(g, u, gone, taken)]
        elif fam == "bridge":
            u1, u2 = m.special[0], m.special[-1]
            if len(m.special) == 2 and g.has_edge(u1, u2):
                for a in g.adj[u1]:
                    for b in g.adj[u2]:
                        if a in gone or b in gone or a == b or g.has_edge(a, b):
                            continue
                        singles.append((add_edit(a, b, (a, u1, u2, b)), frozenset(gone)))
        elif fam == "cross":
            b = m.binding
            if {"v3", "v4"} <= set(b) and not g.has_edge(b["v3"], b["v4"]) and b["v3"] != b["v4"]:
                via = (b["v3"], b["u1"], b["v2"], b["u2"], b["v4"])
                singles.append((add_edit(b["v3"], b["v4"], via), frozenset(gone)))
        elif fam == "fold" and m.subdivision is not None:
            s = m.subdivision
            s_edges = s.edges()
            for u in s.roots:
                rn = [x for x in s.remaining_neighbors(g, u) if x not in gone]
                if len(rn) != 2:
                    continue
                a, b = rn
                if norm(a, b) in s_edges:
                    singles.append((Edit("keep", norm(a, b), (a, u, b) if a < b else (b, u, a)),
                                    frozenset([u])))
                elif g.has_edge(a, b):
                    singles.append((Edit("remove", norm(a, b)), frozenset([u])))
                else:
                    singles.append((add_edit(a, b, (a, u, b)), frozenset([u])))
    seen = set()
    uniq = []
    for e, owners in singles:
        if (e.kind, e.edge) not in seen:
            seen.add((e.kind, e.edge))
            uniq.append((e, owners))
    # every set of edits whose owners are pairwise disjoint
    out: list[tuple] = []

    def grow(i, chosen, used, edges):
        if len(out) >= _EDIT_SET_POOL:
            return
        if i == len(uniq):
            out.append(tuple(chosen))
            return
        grow(i + 1, chosen, used, edges)
        e, owners = uniq[i]
        if not owners & used and e.edge not in edges:
            grow(i + 1, chosen + [e], used | owners, edges | {e.edge})

    grow(0, [], frozenset(), frozenset())
    # a vertex of odd degree in the reduced graph is the end of a color, which
    # the recoloring can extend: prefer edit sets leaving many such neighbors
    near = sorted({x for u in gone for x in g.adj[u] if x not in gone})
    drop = set(_path_edges(m.path)) if r.remove_path else set()
    if r.remove_subdivision and m.subdivision is not None:
        drop |= set(m.subdivision.edges())
    base = {x: g.degree(x) - sum(1 for y in g.adj[x] if y in gone or norm(x, y) in drop)
            for x in near}

    def odd_ends(edits) -> int:
        deg = dict(base)
        for ed in edits:
            for x in ed.edge:
                if x in deg:
                    deg[x] += -1 if ed.kind == "remove" else 1
        return sum(d % 2 for d in deg.values())

    out.sort(key=lambda es: (-odd_ends(es), len(es)))
    return out[:limit]


# ---------------------------------------------------------------- partial colorings

class _State:
    """Partial edge coloring of g with per-color adjacency, kept in sync."""

    def __init__(self, col: dict):
        self.col = {}
        self.adj: dict = {}
        self.cnt: dict = {}
        for e, c in col.items():
            self.put(e, c)

    def deg(self, c, v) -> int:
        return len(self.adj.get(c, {}).get(v, ()))

    def put(self, e, c) -> None:
        a, b = e
        self.col[e] = c
        ad = self.adj.setdefault(c, {})
        ad.setdefault(a, []).append(b)
        ad.setdefault(b, []).append(a)
        self.cnt[c] = self.cnt.get(c, 0) + 1

    def take(self, e) -> int:
        a, b = e
        c = self.col.pop(e)
        ad = self.adj[c]
        ad[a].remove(b)
        ad[b].remove(a)
        if not ad[a]:
            del ad[a]
        if not ad[b]:
            del ad[b]
        self.cnt[c] -= 1
        if not self.cnt[c]:
            del self.cnt[c]
            del self.adj[c]
        return c

    def walk(self, c, v) -> tuple[int, int]:
        """From an end v of color c, return (other end, edges walked)."""
        ad = self.adj[c]
        prev, cur, n = None, v, 0
        while n <= self.cnt[c]:
            nxt = [y for y in ad.get(cur, ()) if y != prev]
            if not nxt:
                return cur, n
            prev, cur = cur, nxt[0]
            n += 1
            if cur == v:
                return cur, n
        raise RecoloringInvalid("walk", {"color": c, "from": v, "adj": {k: list(x) for k, x in ad.items()}})

    def colors(self) -> set:
        return set(self.cnt)

    def ends_at(self, v) -> list:
        return sorted(c for c, ad in self.adj.items() if len(ad.get(v, ())) == 1)


def _partial_problem(st: _State, allowed_cycles: set):
    for c, ad in st.adj.items():
        for v, nb in ad.items():
            if len(nb) > 2:
                return ("branch", {"color": c, "vertex": v})
        if c in allowed_cycles:
            continue
        seen: set = set()
        for s in ad:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in ad[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if all(len(ad[x]) == 2 for x in comp):
                return ("cycle", {"color": c, "vertices": sorted(comp)})
    return None


class _Search:
    def __init__(self, st: _State, free: list, max_colors: int, fresh: list,
                 allowed_cycles: set, node_cap: int):
        self.st = st
        self.free = list(free)
        self.max_colors = max_colors
        self.fresh = list(fresh)
        self.allowed_cycles = allowed_cycles
        self.node_cap = node_cap
        self.nodes = 0
        self.left: dict = {}
        for a, b in self.free:
            self.left[a] = self.left.get(a, 0) + 1
            self.left[b] = self.left.get(b, 0) + 1

    def candidates(self, e) -> list:
        st = self.st
        a, b = e
        ea, eb = st.ends_at(a), st.ends_at(b)
        both = [c for c in ea if c in eb]
        out = both + [c for c in eb if c not in both] + [c for c in ea if c not in both]
        # a new segment of an existing color; it must join up later
        out += [c for c in sorted(st.cnt) if c not in ea and c not in eb]
        ok = []
        for c in out:
            if c in self.allowed_cycles or st.deg(c, a) > 1 or st.deg(c, b) > 1:
                continue
            if st.deg(c, a) == 1 and st.deg(c, b) == 1:
                end, _ = st.walk(c, a)
                if end == b:
                    continue
            ok.append(c)
        if len(st.colors()) < self.max_colors:
            unused = [c for c in self.fresh if c not in st.cnt]
            if unused:
                ok.append(unused[0])
        return ok

    def _dead(self, touched) -> bool:
        """A color with more than two ends that no free edge can extend
        cannot become a path; nor can a finished segment of a split color."""
        st = self.st
        for c in {c for v in touched for c in st.ends_at(v)}:
            ad = st.adj[c]
            ends = [v for v, nb in ad.items() if len(nb) == 1]
            closed = [v for v in ends if not self.left.get(v, 0)]
            if len(closed) > 2:
                return True
            if len(closed) == 2 and len(ends) > 2:
                end, _ = st.walk(c, closed[0])
                if end == closed[1]:
                    return True
        return False

    def run(self) -> bool:
        if not self.free:
            return self._complete()
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise Unsatisfiable(f"search node cap {self.node_cap} reached")
        best = None
        for i, e in enumerate(self.free):
            cs = self.candidates(e)
            if best is None or len(cs) < len(best[2]):
                best = (i, e, cs)
                if not cs:
                    return False
        i, e, cs = best
        self.free.pop(i)
        a, b = e
        self.left[a] -= 1
        self.left[b] -= 1
        for c in cs:
            self.st.put(e, c)
            if not self._dead((a, b)) and self.run():
                return True
            self.st.take(e)
        self.left[a] += 1
        self.left[b] += 1
        self.free.insert(i, e)
        return False

    def _complete(self) -> bool:
        st = self.st
        for c, ad in st.adj.items():
            if c in self.allowed_cycles and all(len(nb) == 2 for nb in ad.values()):
                start = next(iter(ad))
                _, n = st.walk(c, start)
                if n == st.cnt[c]:
                    continue
                return False
            ends = [v for v, nb in ad.items() if len(nb) == 1]
            if len(ends) != 2:
                return False
            _, n = st.walk(c, ends[0])
            if n != st.cnt[c]:
                return False
        return True


# ---------------------------------------------------------------- recoloring

@dataclass
class RecolorInfo:
    variant: int = 0
    nodes: int = 0
    mode: str = "recolor"
    widened: bool = False
    pc_count: int = 0
    tried: list = field(default_factory=list)


def _selector(m, st: _State, pc: EdgeColoring, sel, new_ids: list):
    if isinstance(sel, dict):
        if "new" in sel:
            return new_ids[int(sel["new"])]
        if "edge" in sel:
            a, b = (_resolve(m, x) for x in sel["edge"])
            e = norm(a, b)
            if e not in pc.color_of:
                raise RecoloringInvalid("select", f"edge {e} not in the pre-coloring")
            return pc.color_of[e]
        if "ends" in sel:
            v = _resolve(m, sel["ends"])
            ends = st.ends_at(v)
            if not ends:
                raise RecoloringInvalid("select", f"no color ends at {v}")
            return ends[0]
    raise RecoloringInvalid("select", f"bad selector {sel!r}")


def _check(st: _State, allowed: set, step) -> None:
    bad = _partial_problem(st, allowed)
    if bad:
        raise RecoloringInvalid(step, bad)


def _widen_colors(g: Graph, red: Reduction, st: _State, pc: EdgeColoring, cycles_ok) -> list:
    """Colors of the pre-coloring untouched by the program that meet a
    neighbor of a removed vertex; freeing them lets the search reroute."""
    gone = set(red.removed_vertices)
    near = {x for u in gone for x in g.adj[u] if x not in gone}
    near |= {x for e in red.path_edges for x in e if x not in gone}
    out = []
    classes = pc.classes()
    for c in sorted(classes):
        if c in cycles_ok or c not in st.cnt or st.cnt[c] != len(classes[c]):
            continue
        if any(v in near for v in st.adj[c]):
            out.append(c)
    return out


def _run_program(g: Graph, m: RuleMatch, r: Rule, red: Reduction, pc: EdgeColoring,
                 sc, cycles_ok: set, deviate_edits: bool, node_cap: int,
                 info: RecolorInfo, widen: bool = False) -> EdgeColoring:
    added = {ed.edge for ed in red.added}
    base = {e: c for e, c in pc.color_of.items() if e not in added}
    st = _State(base)
    new_ids = [pc.fresh_color() + k for k in range(r.budget)]
    todo = set(red.freed) | {ed.edge for ed in red.added if ed.kind == "keep"}
    if deviate_edits:
        for ed in red.added:
            if not ed.via:
                continue
            c = pc.color_of[ed.edge]
            for f in _path_edges(ed.via):
                if f not in todo:
                    raise RecoloringInvalid("Deviate", f"section edge {f} not free")
                st.put(f, c)
                todo.discard(f)
            _check(st, cycles_ok, ("Deviate", ed.edge))
    for step in r.program.steps:
        a = step.args
        if step.op == "AssignNewColor":
            c = _selector(m, st, pc, a.get("color", {"new": 0}), new_ids)
            es = _path_edges(m.path) if a.get("edges") == "path" else \
                [norm(_resolve(m, x), _resolve(m, y)) for x, y in a["edges"]]
            for e in es:
                if e not in todo:
                    raise RecoloringInvalid(step.op, f"edge {e} already colored")
                st.put(e, c)
                todo.discard(e)
        elif step.op == "TwoColor":
            if sc is None:
                raise RecoloringInvalid(step.op, "no subdivision coloring supplied")
            ids = {"red": new_ids[0], "blue": new_ids[1]}
            for e, col in sc.color_of_path_edge.items():
                if e not in todo:
                    raise RecoloringInvalid(step.op, f"edge {e} already colored")
                st.put(e, ids[col])
                todo.discard(e)
        elif step.op == "Deviate":
            c = _selector(m, st, pc, a["color"], new_ids)
            sec = [_resolve(m, x) for x in a["section"]]
            for e in _path_edges(sec):
                if e not in todo:
                    raise RecoloringInvalid(step.op, f"section edge {e} not free")
                st.put(e, c)
                todo.discard(e)
        elif step.op == "Extend":
            c = _selector(m, st, pc, a["color"], new_ids)
            for x, y in a["edges"]:
                e = norm(_resolve(m, x), _resolve(m, y))
                if e not in todo:
                    raise RecoloringInvalid(step.op, f"edge {e} not free")
                st.put(e, c)
                todo.discard(e)
        elif step.op == "RecolorEdge":
            c = _selector(m, st, pc, a["color"], new_ids)
            e = norm(*(_resolve(m, x) for x in a["edge"]))
            if e in st.col:
                st.take(e)
            st.put(e, c)
            todo.discard(e)
        elif step.op == "SplitColor":
            c = _selector(m, st, pc, a["color"], new_ids)
            nc = _selector(m, st, pc, a["into"], new_ids)
            x, y = (_resolve(m, v) for v in a["at"])
            if st.col.get(norm(x, y)) != c:
                raise RecoloringInvalid(step.op, f"edge {(x, y)} is not on color {c}")
            # everything reachable from y without crossing xy moves to the new color
            stack, seen = [y], {x, y}
            moved = []
            while stack:
                p = stack.pop()
                for q in st.adj[c].get(p, ()):
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
                        moved.append(norm(p, q))
            for e in moved:
                st.take(e)
                st.put(e, nc)
        elif step.op == "Search":
            fresh = list(new_ids)
            if widen:
                for c in _widen_colors(g, red, st, pc, cycles_ok):
                    for e in [e for e, x in st.col.items() if x == c]:
                        st.take(e)
                        todo.add(e)
                    fresh.append(c)
            srch = _Search(st, sorted(todo), pc.count + r.budget, fresh, cycles_ok, node_cap)
            ok = srch.run()
            info.nodes += srch.nodes
            if not ok:
                raise Unsatisfiable(f"rule {r.id}: no recoloring extends this pre-coloring")
            todo.clear()
        _check(st, cycles_ok, step.op)
    if todo:
        raise RecoloringInvalid("end", f"uncolored edges {sorted(todo)[:6]}")
    out = EdgeColoring(dict(st.col))
    rep = verify_path_coloring(g, out, allow_cycles=bool(cycles_ok))
    if not rep.ok:
        raise RecoloringInvalid("final", rep.violations[:3])
    for col, es in out.classes().items():
        if col not in cycles_ok and classify_class(None, es).kind is ShapeKind.Cycle:
            raise RecoloringInvalid("final", {"cycle": col})
    if out.count > pc.count + r.budget:
        raise RecoloringInvalid("budget", {"colors": out.count, "pre": pc.count, "budget": r.budget})
    return out


def _subdivision_variants(m: RuleMatch) -> list:
    s = m.subdivision
    out = []
    inact = [tuple(x) for x in m.constraints.get("inactivate", ())]
    if inact:
        try:
            out.append(two_color(s, inactivate=inact))
        except Unsatisfiable:
            pass
    seen = {sc.path_color for sc in out}
    for sc in all_two_colorings(s):
        if sc.path_color not in seen:
            seen.add(sc.path_color)
            out.append(sc)
    return out


def recolor(g: Graph, m: RuleMatch, pc: EdgeColoring, undo: Reduction | None = None,
            cycles_ok: set | frozenset = frozenset(), node_cap: int = DEFAULT_SEARCH_NODES,
            info: RecolorInfo | None = None) -> EdgeColoring:
    """Coloring of g from a coloring of the reduced graph. Colors listed in
    ``cycles_ok`` may stay cycles (safety procedure only)."""
    info = info if info is not None else RecolorInfo()
    info.pc_count = pc.count
    r = rule(m.rule_id)
    red = undo if undo is not None else apply_rule(g, m)[1]
    if pc.edges != red.reduced.edges:
        raise PreconditionViolated("pre-coloring does not cover the reduced graph")
    variants = _subdivision_variants(m) if r.remove_subdivision else [None]
    last: Exception | None = None
    spent = 0
    modes = [(k, sc, dev, wide) for wide in (False, True) for k, sc in enumerate(variants)
             for dev in (True, False) if dev or any(ed.via for ed in red.added)]
    for k, sc, deviate, wide in modes:
        try:
            cap = max(1, node_cap - spent)
            if wide:
                cap = min(cap, WIDE_SEARCH_NODES)
            out = _run_program(g, m, r, red, pc, sc, set(cycles_ok), deviate, cap, info,
                               widen=wide)
            info.variant = k
            info.widened = wide
            return out
        except (Unsatisfiable, RecoloringInvalid) as exc:
            info.tried.append(f"variant {k}{'' if deviate else ' free'}{' wide' if wide else ''}: {exc}")
            last = exc
        spent = info.nodes
        if spent >= node_cap:
            break
    if isinstance(last, RecoloringInvalid):
        raise last
    raise Unsatisfiable(f"rule {r.id}: no recoloring found", transcript=info.tried[-6:])


# ---------------------------------------------------------------- safety procedure

def _k5_minus_splits(sub: Graph, limit: int = 6) -> list:
    """Path + cycle decompositions of a K5-: a 5-cycle (or 4-cycle) and a path."""
    out = []
    es = sub.sorted_edges()
    for k in (5, 4):
        for cyc in itertools.combinations(es, k):
            if classify_class(None, cyc).kind is not ShapeKind.Cycle:
                continue
            rest = [e for e in es if e not in cyc]
            if classify_class(None, rest).kind is ShapeKind.Path:
                out.append((list(cyc), rest))
                if len(out) >= limit:
                    return out
    return out


def _component_colorings(reduced: Graph, solve: Callable) -> tuple[list, list, list]:
    """Per component: list of candidate colorings (old ids), plus which
    components are exceptional."""
    plain, exceptional = [], []
    for comp in components_avoiding(reduced):
        if len(comp) < 2:
            continue
        sub, old = reduced.induced(comp)
        if sub.m == 0:
            continue
        kind = classify_exception(sub)
        back = lambda es, old=old: [norm(old[a], old[b]) for a, b in es]
        if kind is ExceptionKind.K3:
            exceptional.append([[back(sub.sorted_edges())]])
        elif kind is ExceptionKind.K5minus:
            exceptional.append([[back(c), back(p)] for c, p in _k5_minus_splits(sub)])
        else:
            c = solve(sub)
            plain.append([back(es) for es in c.classes().values()])
    return plain, exceptional, []


def safety_recolor(g: Graph, m: RuleMatch, reduced: Graph, solve: Callable | None = None,
                   undo: Reduction | None = None, node_cap: int = DEFAULT_SEARCH_NODES,
                   info: RecolorInfo | None = None) -> EdgeColoring:
    """Color the reduced graph component by component (K3 as a cycle, K5- as
    a cycle plus a path), recolor, then merge every cycle into a path."""
    info = info if info is not None else RecolorInfo()
    if solve is None:
        from ..decompose import decompose

        def solve(sub):
            return decompose(sub).coloring
    red = undo if undo is not None else apply_rule(g, m)[1]
    plain, exceptional, _ = _component_colorings(reduced, solve)
    classes = [es for comp in plain for es in comp]
    if not exceptional:
        pc = EdgeColoring.from_classes(classes)
        info.mode = "recolor"
        return recolor(g, m, pc, red, node_cap=node_cap, info=info)
    last: Exception | None = None
    for choice in itertools.islice(itertools.product(*exceptional), 8):
        cls = list(classes)
        cyc_ids = set()
        for parts in choice:
            cyc_ids.add(len(cls))
            cls.extend(parts)
        pc = EdgeColoring.from_classes(cls)
        try:
            c = recolor(g, m, pc, red, cycles_ok=frozenset(cyc_ids), node_cap=node_cap, info=info)
            c = eliminate_cycles(g, c)
            if verify_path_coloring(g, c).ok:
                info.mode = "cycles-merged"
                return c
        except (Unsatisfiable, RecoloringInvalid, NoCompanionPath, PreconditionViolated) as exc:
            info.tried.append(f"safety: {exc}")
            last = exc
    # last resort: leave the exceptional components to the search with the
    # same color allowance their cycle colorings would have had
    r = rule(m.rule_id)
    free_edges = {e for comp in exceptional for e in itertools.chain(*comp[0]) if e in g.edges}
    allowance = sum(len(comp[0]) for comp in exceptional)
    pc_plain = EdgeColoring.from_classes(classes)
    st = _State({e: c for e, c in pc_plain.color_of.items()
                 if e not in {ed.edge for ed in red.added}})
    todo = sorted(set(red.freed) | free_edges | {ed.edge for ed in red.added if ed.kind == "keep"})
    fresh = [pc_plain.fresh_color() + k for k in range(r.budget + allowance)]
    cap = pc_plain.count + allowance + r.budget
    srch = _Search(st, todo, cap, fresh, set(), node_cap)
    try:
        ok = srch.run()
    except Unsatisfiable:
        ok = False
    info.nodes += srch.nodes
    if ok:
        out = EdgeColoring(dict(st.col)).normalized()
        if verify_path_coloring(g, out).ok:
            info.mode = "free-components"
            info.pc_count = pc_plain.count + allowance
            return out
    if last is not None:
        raise Unsatisfiable(f"safety procedure failed: {last}", transcript=info.tried[-6:])
    raise Unsatisfiable("safety procedure failed", transcript=info.tried[-6:])
