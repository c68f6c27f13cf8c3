"""Rooted K4 and C4+ subdivisions on a 4-family: search, chord elimination,
the A/B/C properties, redirection, routing, 2-colorings and the per-root
problem classification used to pick a composite rule."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .coloring import VerifyReport
from .errors import (GuardFailure, InducedK4Violation, NotFound, SearchBudgetExceeded,
                     Unsatisfiable)
from .graph import Graph, norm, to_dot

K4 = "K4"
C4PLUS = "C4plus"
SEMI = "SemiC4plus"

DEFAULT_SEARCH_BUDGET = 200_000


@dataclass(frozen=True)
class Subdivision:
    """Six root-to-root paths.

    For K4 the roots are in any order. For C4plus and SemiC4plus the roots
    (a, b, c, d) lie on the 4-cycle in that order, a-b and c-d carry two
    parallel paths each, b-c and d-a one solo path each. A SemiC4plus has one
    contact vertex shared by a parallel a-b path and a parallel c-d path.
    """

    kind: str
    roots: tuple
    paths: tuple
    star: bool = False
    contact: int | None = None
    redirections: tuple = ()

    @property
    def link(self) -> dict:
        out = {frozenset(p): 0 for p in itertools.combinations(self.roots, 2)}
        for p in self.paths:
            out[frozenset((p[0], p[-1]))] += 1
        return out

    def edges(self) -> frozenset:
        return frozenset(norm(a, b) for p in self.paths for a, b in zip(p, p[1:]))

    def vertices(self) -> set:
        return {v for p in self.paths for v in p}

    def internal_owner(self) -> dict:
        """Internal vertex -> index of the (first) path it lies on."""
        own: dict = {}
        for i, p in enumerate(self.paths):
            for v in p[1:-1]:
                own.setdefault(v, i)
        return own

    def incident(self, i: int, u: int) -> bool:
        p = self.paths[i]
        return u in (p[0], p[-1])

    def between(self, a: int, b: int) -> list[int]:
        return [i for i, p in enumerate(self.paths) if {p[0], p[-1]} == {a, b}]

    def remaining_neighbors(self, g: Graph, u: int) -> tuple:
        es = self.edges()
        return tuple(v for v in g.adj[u] if norm(u, v) not in es)

    def replace_path(self, i: int, new: Sequence[int], tag: str | None = None) -> "Subdivision":
        paths = list(self.paths)
        old = paths[i]
        new = tuple(new)
        if new[0] != old[0]:
            new = new[::-1]
        paths[i] = new
        hist = self.redirections + ((tag,) if tag else ())
        return Subdivision(self.kind, self.roots, tuple(paths), self.star, self.contact, hist)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "roots": list(self.roots), "paths": [list(p) for p in self.paths],
                "star": self.star, "contact": self.contact, "redirections": list(self.redirections)}


def expected_links(kind: str, roots: Sequence[int]) -> dict:
    if kind == K4:
        return {frozenset(p): 1 for p in itertools.combinations(roots, 2)}
    a, b, c, d = roots
    out = {frozenset(p): 0 for p in itertools.combinations(roots, 2)}
    out[frozenset((a, b))] = 2
    out[frozenset((c, d))] = 2
    out[frozenset((b, c))] = 1
    out[frozenset((d, a))] = 1
    return out


# ---------------------------------------------------------------- validation

def star_violations(g: Graph, s: Subdivision) -> list:
    """Breaches of the 0-, 1- and 2-linked remaining-neighbor restrictions."""
    out = []
    rn = {u: set(s.remaining_neighbors(g, u)) for u in s.roots}
    link = s.link
    for x, y in itertools.combinations(s.roots, 2):
        k = link[frozenset((x, y))]
        common = rn[x] & rn[y]
        if k == 0 and common:
            out.append(("0-linked", {"roots": [x, y], "common": sorted(common)}))
        elif k == 1:
            (i,) = s.between(x, y)
            inner = set(s.paths[i][1:-1])
            for z in s.roots:
                if z not in (x, y) and rn[z] & inner:
                    out.append(("1-linked", {"solo": [x, y], "root": z, "vertices": sorted(rn[z] & inner)}))
        elif k == 2:
            if len(common) > 1:
                out.append(("2-linked", {"roots": [x, y], "common": sorted(common)}))
            elif common:
                (v,) = common
                ok = any(v in s.paths[i][1:-1] and not s.incident(i, x) and not s.incident(i, y)
                         and len(s.between(s.paths[i][0], s.paths[i][-1])) == 2
                         for i in range(len(s.paths)))
                if not ok:
                    out.append(("2-linked", {"roots": [x, y], "common": [v]}))
    return out


def validate_subdivision(g: Graph, s: Subdivision) -> VerifyReport:
    bad = []
    roots = list(s.roots)
    if len(set(roots)) != 4:
        bad.append(("roots", {"roots": roots}))
    if s.kind not in (K4, C4PLUS, SEMI):
        bad.append(("kind", {"kind": s.kind}))
    if len(s.paths) != 6:
        bad.append(("path-count", {"count": len(s.paths)}))
    rootset = set(roots)
    for i, p in enumerate(s.paths):
        if len(p) < 2:
            bad.append(("short-path", {"path": i}))
            continue
        if len(set(p)) != len(p):
            bad.append(("repeated-vertex", {"path": i}))
        if p[0] not in rootset or p[-1] not in rootset or p[0] == p[-1]:
            bad.append(("ends", {"path": i, "ends": [p[0], p[-1]]}))
        for v in p[1:-1]:
            if v in rootset:
                bad.append(("root-inside", {"path": i, "vertex": v}))
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                bad.append(("non-edge", {"path": i, "edge": [a, b]}))
    seen: dict = {}
    shared = []
    for i, p in enumerate(s.paths):
        for v in p[1:-1]:
            if v in seen:
                shared.append((seen[v], i, v))
            else:
                seen[v] = i
    es = [norm(a, b) for p in s.paths for a, b in zip(p, p[1:])]
    if len(es) != len(set(es)):
        bad.append(("repeated-edge", {}))
    if s.kind == SEMI:
        if len(shared) != 1 or shared[0][2] != s.contact:
            bad.append(("contact", {"shared": [list(x) for x in shared], "contact": s.contact}))
        else:
            i, j, _ = shared[0]
            a, b, c, d = roots
            ends = {frozenset((s.paths[i][0], s.paths[i][-1])), frozenset((s.paths[j][0], s.paths[j][-1]))}
            if ends != {frozenset((a, b)), frozenset((c, d))}:
                bad.append(("contact", {"paths": [i, j]}))
    else:
        for i, j, v in shared:
            bad.append(("not-disjoint", {"paths": [i, j], "vertex": v}))
    if not bad and s.kind in (K4, C4PLUS, SEMI):
        want = expected_links(K4 if s.kind == K4 else C4PLUS, roots)
        if s.link != want:
            bad.append(("pattern", {"link": {"-".join(map(str, sorted(k))): v for k, v in s.link.items()}}))
    if not bad and s.kind == C4PLUS and s.star:
        bad.extend(star_violations(g, s))
    return VerifyReport(not bad, bad)


# ---------------------------------------------------------------- search

class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.cap:
            raise SearchBudgetExceeded(f"subdivision search exceeded {self.cap} nodes")


def _dist_to(g: Graph, t: int, blocked: set) -> dict:
    dist = {t: 0}
    dq = deque([t])
    while dq:
        x = dq.popleft()
        for y in g.adj[x]:
            if y not in dist and y not in blocked:
                dist[y] = dist[x] + 1
                dq.append(y)
    return dist


def _paths(g: Graph, s: int, t: int, blocked: set, banned_edge: bool, budget: _Budget,
           slack: int | None = None) -> Iterator[tuple]:
    """Simple s-t paths avoiding ``blocked``, shortest-first by greedy descent.
    With ``slack`` set, only paths at most that much longer than shortest."""
    dist = _dist_to(g, t, blocked - {s})
    if s not in dist and not g.has_edge(s, t):
        return
    limit = None if slack is None else dist.get(s, 1) + slack + (1 if banned_edge else 0)
    path = [s]
    on = {s}

    def rec(x):
        budget.tick()
        nbrs = sorted((y for y in g.adj[x] if y not in on and (y == t or (y not in blocked and y in dist))),
                      key=lambda y: (dist.get(y, 0), y))
        for y in nbrs:
            if limit is not None and len(path) + dist.get(y, 0) > limit:
                continue
            if y == t:
                if banned_edge and x == s:
                    continue
                yield tuple(path) + (t,)
                continue
            path.append(y)
            on.add(y)
            yield from rec(y)
            path.pop()
            on.discard(y)

    yield from rec(s)


def _reachable(g: Graph, s: int, t: int, blocked: set) -> bool:
    if g.has_edge(s, t):
        return True
    return t in _dist_to(g, s, blocked - {t}) if s not in blocked else False


def _systems(g: Graph, roots: Sequence[int], pairs: Sequence[tuple], budget: _Budget,
             slack: int | None = None) -> Iterator[list]:
    """Internally disjoint path systems linking ``pairs`` (repeats allowed)."""
    rootset = set(roots)
    chosen: list = []
    used_direct: set = set()

    def rec(k: int, blocked: set):
        if k == len(pairs):
            yield list(chosen)
            return
        s, t = pairs[k]
        bl = blocked | (rootset - {s, t})
        for p in _paths(g, s, t, bl, norm(s, t) in used_direct, budget, slack):
            inner = set(p[1:-1])
            nb = blocked | inner
            ok = True
            for s2, t2 in pairs[k + 1:]:
                if not _reachable(g, s2, t2, nb | (rootset - {s2, t2})):
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(p)
            direct = len(p) == 2
            if direct:
                used_direct.add(norm(s, t))
            yield from rec(k + 1, nb)
            if direct:
                used_direct.discard(norm(s, t))
            chosen.pop()

    yield from rec(0, set())


SLACKS = (0, 1, 2, 4, None)


def find_rooted_k4(g: Graph, U: Iterable[int], budget: int = DEFAULT_SEARCH_BUDGET) -> Subdivision | None:
    """Six internally disjoint paths joining every pair of U. Searches with
    growing detour allowance; the last round is unbounded, so None means the
    search was exhaustive."""
    roots = tuple(sorted(U))
    b = _Budget(budget)
    for slack in SLACKS:
        for sysm in _systems(g, roots, list(itertools.combinations(roots, 2)), b, slack):
            return Subdivision(K4, roots, tuple(sysm))
    return None


def c4plus_labelings(U: Iterable[int]) -> list[tuple]:
    """The six ways to choose which pairs are doubled, solo and unlinked."""
    u = sorted(U)
    out = []
    for order in ((u[0], u[1], u[2], u[3]), (u[0], u[1], u[3], u[2]), (u[0], u[2], u[1], u[3])):
        a, b, c, d = order
        out.append((a, b, c, d))
        out.append((b, c, d, a))
    return out


def _c4_pairs(roots: tuple) -> list[tuple]:
    a, b, c, d = roots
    return [(a, b), (a, b), (c, d), (c, d), (b, c), (d, a)]


def eliminate_chords(g: Graph, s: Subdivision) -> Subdivision:
    cur = s
    while True:
        single = {frozenset((p[0], p[-1])) for p in cur.paths if len(p) == 2}
        changed = False
        for i, p in enumerate(cur.paths):
            pos = {v: k for k, v in enumerate(p)}
            best = None
            for a in range(len(p)):
                for y in g.adj[p[a]]:
                    bidx = pos.get(y)
                    if bidx is None or bidx <= a + 1:
                        continue
                    x = p[a]
                    if x in cur.roots and y in cur.roots and frozenset((x, y)) in single:
                        continue
                    if cur.kind == SEMI and cur.contact in p[a + 1:bidx]:
                        continue
                    best = (a, bidx)
                    break
                if best:
                    break
            if best:
                a, bidx = best
                cur = cur.replace_path(i, p[:a + 1] + p[bidx:])
                changed = True
                break
        if not changed:
            return Subdivision(cur.kind, cur.roots, cur.paths, cur.star, cur.contact, s.redirections)


def chords(g: Graph, s: Subdivision) -> list[tuple]:
    """(path index, chord edge) for every non-exempt chord."""
    single = {frozenset((p[0], p[-1])) for p in s.paths if len(p) == 2}
    out = []
    for i, p in enumerate(s.paths):
        pos = {v: k for k, v in enumerate(p)}
        for a, x in enumerate(p):
            for y in g.adj[x]:
                bidx = pos.get(y)
                if bidx is None or bidx <= a + 1:
                    continue
                if x in s.roots and y in s.roots and frozenset((x, y)) in single:
                    continue
                out.append((i, norm(x, y)))
    return out


def find_k_subdivision(g: Graph, U: Iterable[int], budget: int = DEFAULT_SEARCH_BUDGET) -> Subdivision:
    """A chordless rooted K4-subdivision, or else a chordless C4+* one."""
    roots = tuple(sorted(U))
    try:
        k4 = find_rooted_k4(g, roots, budget)
    except SearchBudgetExceeded:
        k4 = None
    if k4 is not None:
        return eliminate_chords(g, k4)
    b = _Budget(budget)
    tried = 0
    try:
        for slack, lab in itertools.product(SLACKS, c4plus_labelings(roots)):
            for sysm in _systems(g, lab, _c4_pairs(lab), b, slack):
                tried += 1
                cand = eliminate_chords(g, Subdivision(C4PLUS, lab, tuple(sysm)))
                if not star_violations(g, cand):
                    return Subdivision(C4PLUS, lab, cand.paths, star=True)
    except SearchBudgetExceeded:
        pass
    raise NotFound(f"no chordless subdivision rooted on {list(roots)} (systems tried: {tried}, nodes: {b.used})")


# ---------------------------------------------------------------- patterns

@dataclass
class RootView:
    rn: dict
    on_s: set
    owner: dict


def _view(g: Graph, s: Subdivision) -> RootView:
    return RootView({u: s.remaining_neighbors(g, u) for u in s.roots}, s.vertices(), s.internal_owner())


def patterns(g: Graph, s: Subdivision, view: RootView | None = None) -> dict:
    """Per-root pattern tag from the shape of its two remaining neighbors."""
    vw = view or _view(g, s)
    tags = {}
    for u in s.roots:
        rn = vw.rn[u]
        if len(rn) != 2:
            tags[u] = "other"
            continue
        v, w = rn
        partners = [x for x in s.roots if x != u and set(vw.rn[x]) == set(rn)]
        if not g.has_edge(v, w):
            if partners:
                touched = v in vw.on_s or w in vw.on_s
                tags[u] = "CU" if touched else "CT2NA"
            else:
                tags[u] = "CV"
        elif v in vw.on_s and w in vw.on_s:
            tags[u] = "CV'"
        else:
            tags[u] = "CN"
    return tags


def settled_roots(g: Graph, s: Subdivision, view: RootView | None = None) -> tuple[set, set]:
    """(lone-settled roots, settled roots)."""
    vw = view or _view(g, s)
    tags = patterns(g, s, vw)
    lone = set()
    for u in s.roots:
        rn = set(vw.rn[u])
        others = [x for x in s.roots if x != u]
        if tags[u] in ("CV", "CV'"):
            if all(len(rn & set(vw.rn[x])) <= 1 for x in others):
                lone.add(u)
        elif tags[u] == "CN":
            if not (rn & vw.on_s) and not any(rn & set(vw.rn[x]) for x in others):
                lone.add(u)
    settled = set(lone)
    for u in s.roots:
        if tags[u] != "CT2NA":
            continue
        rn = set(vw.rn[u])
        partner = [x for x in s.roots if x != u and set(vw.rn[x]) == rn]
        rest = [x for x in s.roots if x != u and x not in partner]
        if len(partner) == 1 and not (rn & vw.on_s) and not any(rn & set(vw.rn[x]) for x in rest):
            settled.add(u)
    return lone, settled


# ---------------------------------------------------------------- properties

@dataclass
class PropertyCheck:
    A: bool
    B: bool
    C: bool
    witness: dict = field(default_factory=dict)

    @property
    def strong(self) -> bool:
        return self.A and self.B and self.C


def a_chords(g: Graph, s: Subdivision, view: RootView | None = None) -> list:
    vw = view or _view(g, s)
    tags = patterns(g, s, vw)
    _, settled = settled_roots(g, s, vw)
    out = []
    for i, e in chords(g, s):
        for u in (s.paths[i][0], s.paths[i][-1]):
            if u not in settled or tags[u] == "CV'":
                out.append({"root": u, "path": i, "chord": list(e)})
    return out


def b_chords(g: Graph, s: Subdivision, view: RootView | None = None) -> list:
    vw = view or _view(g, s)
    out = []
    for u in s.roots:
        rn = set(vw.rn[u])
        for i, p in enumerate(s.paths):
            if s.incident(i, u):
                continue
            pos = {v: k for k, v in enumerate(p)}
            hits = sorted(v for v in rn if v in pos)
            for x, y in itertools.combinations(hits, 2):
                if g.has_edge(x, y) and abs(pos[x] - pos[y]) > 1:
                    out.append({"root": u, "path": i, "chord": [x, y]})
    return out


@dataclass(frozen=True)
class Redirection:
    op: str
    u1: int
    u2: int
    path: int
    new_path: tuple
    detail: dict = field(default_factory=dict, compare=False, hash=False)


def _common_one(vw: RootView, g: Graph, u1: int, u2: int):
    r1, r2 = vw.rn[u1], vw.rn[u2]
    if len(r1) != 2 or len(r2) != 2:
        return None
    common = set(r1) & set(r2)
    if len(common) != 1:
        return None
    (v,) = common
    v1 = next(x for x in r1 if x != v)
    v2 = next(x for x in r2 if x != v)
    if not (g.has_edge(v1, v) and g.has_edge(v2, v)):
        return None
    return v, v1, v2


def find_redirection(g: Graph, s: Subdivision) -> Redirection | None:
    """First applicable redirection in the order X1, X2, X3, X4 over ordered
    root pairs, or None when the subdivision has property C."""
    vw = _view(g, s)
    onS = vw.on_s
    ordered = [(a, b) for a in s.roots for b in s.roots if a != b]
    for op in ("X1", "X2", "X3", "X4"):
        for u1, u2 in ordered:
            paths12 = s.between(u1, u2)
            if not paths12:
                continue
            if op in ("X1", "X2"):
                m = _common_one(vw, g, u1, u2)
                if m is None:
                    continue
                v, v1, v2 = m
                if {v, v1, v2} & onS:
                    continue
                for i in paths12:
                    p = s.paths[i] if s.paths[i][0] == u1 else s.paths[i][::-1]
                    if len(p) < 3:
                        continue
                    w1 = p[1]
                    adj = g.has_edge(v1, w1)
                    if op == "X1" and not adj:
                        return Redirection("X1", u1, u2, i, (u1, v, u2), {"v": v, "v1": v1, "v2": v2, "w1": w1})
                    if op == "X2" and adj:
                        if g.has_edge(v, w1):
                            raise InducedK4Violation(
                                f"{u1},{v},{v1},{w1} induce a K4 around root {u1}")
                        return Redirection("X2", u1, u2, i, (u1, v1, v, u2), {"v": v, "v1": v1, "v2": v2, "w1": w1})
            elif op == "X3":
                m = _common_one(vw, g, u1, u2)
                if m is None:
                    continue
                v, v1, v2 = m
                if {v, v1} & onS:
                    continue
                for u3 in s.roots:
                    if u3 in (u1, u2):
                        continue
                    for i in s.between(u1, u3):
                        p = s.paths[i] if s.paths[i][0] == u1 else s.paths[i][::-1]
                        if v2 not in p[1:-1]:
                            continue
                        j = p.index(v2)
                        if len(p) - 1 - j < 2:
                            continue
                        w1 = p[1]
                        if not g.has_edge(w1, v1):
                            new = (u1, v) + tuple(p[j:])
                        elif not g.has_edge(w1, v):
                            new = (u1, v1, v) + tuple(p[j:])
                        else:
                            raise InducedK4Violation(
                                f"{u1},{v},{v1},{w1} induce a K4 around root {u1}")
                        return Redirection("X3", u1, u3, i, new, {"v": v, "v1": v1, "v2": v2, "w1": w1, "u2": u2})
            else:
                r1, r2 = vw.rn[u1], vw.rn[u2]
                if len(r1) != 2 or set(r1) != set(r2):
                    continue
                v, vp = sorted(r1)
                if not g.has_edge(v, vp) or {v, vp} & onS:
                    continue
                for i in paths12:
                    p = s.paths[i] if s.paths[i][0] == u1 else s.paths[i][::-1]
                    if len(p) < 3:
                        continue
                    w1 = p[1]
                    if not g.has_edge(v, w1):
                        mid = vp
                    elif not g.has_edge(vp, w1):
                        mid = v
                    else:
                        raise InducedK4Violation(f"{u1},{v},{vp},{w1} induce a K4 around root {u1}")
                    return Redirection("X4", u1, u2, i, (u1, mid, u2), {"v": v, "v'": vp, "w1": w1})
    return None


def check_properties(g: Graph, s: Subdivision) -> PropertyCheck:
    vw = _view(g, s)
    a = a_chords(g, s, vw)
    b = b_chords(g, s, vw)
    try:
        r = find_redirection(g, s)
        rw = None if r is None else {"op": r.op, "u1": r.u1, "u2": r.u2, "path": r.path,
                                     "new_path": list(r.new_path)}
    except InducedK4Violation as exc:
        rw = {"op": "guard", "detail": str(exc)}
    wit = {}
    if a:
        wit["A"] = a[0]
    if b:
        wit["B"] = b[0]
    if rw:
        wit["C"] = rw
    return PropertyCheck(not a, not b, rw is None, wit)


MAX_REDIRECTIONS = 4


def redirect(g: Graph, s: Subdivision) -> Subdivision:
    """Apply redirections until none matches."""
    cur = s
    while True:
        r = find_redirection(g, cur)
        if r is None:
            return cur
        if len(cur.redirections) - len(s.redirections) >= 2 * MAX_REDIRECTIONS:
            raise GuardFailure(f"redirection did not settle after {2 * MAX_REDIRECTIONS} steps")
        cur = cur.replace_path(r.path, r.new_path, tag=r.op)


def redirection_count(before: Subdivision, after: Subdivision) -> int:
    return len(after.redirections) - len(before.redirections)


def routing(g: Graph, s: Subdivision, u: int, new_path_hint: int, w: int | None = None,
            v2: int | None = None) -> Subdivision:
    """Make the remaining neighbors of ``u`` non-adjacent on a rewired subdivision.

    ``new_path_hint`` indexes the path (u, v1, ..., u') of ``s``; ``w`` is the
    neighbor of u that left the subdivision and ``v2`` the other member of
    u's original adjacent pair.
    """
    p = s.paths[new_path_hint]
    if p[0] != u:
        p = p[::-1]
    if p[0] != u:
        raise GuardFailure(f"path {new_path_hint} does not start at root {u}")
    v1 = p[1]
    rn = list(s.remaining_neighbors(g, u))
    if v2 is None or w is None:
        if len(rn) != 2:
            raise GuardFailure(f"root {u} has {len(rn)} remaining neighbors")
        if v2 is None:
            adj = [x for x in rn if g.has_edge(x, v1) and x != w]
            if not adj:
                raise GuardFailure(f"no remaining neighbor of {u} adjacent to {v1}")
            v2 = adj[0]
        if w is None:
            w = next(x for x in rn if x != v2)
    if w in s.vertices():
        raise GuardFailure(f"{w} still lies on the subdivision")
    if g.has_edge(v1, w) and g.has_edge(v2, w):
        raise GuardFailure(f"{u},{v1},{v2},{w} would induce a K4")
    if not g.has_edge(v2, w):
        return s
    if v2 in s.vertices():
        raise GuardFailure(f"{v2} lies on the subdivision")
    return s.replace_path(new_path_hint, (u, v2) + tuple(p[1:]), tag="routing")


# ---------------------------------------------------------------- 2-colorings

RED, BLUE = "red", "blue"


@dataclass(frozen=True)
class SubdivisionColoring:
    path_color: tuple
    color_of_path_edge: dict
    end_color: dict

    def classes(self) -> dict:
        out = {RED: set(), BLUE: set()}
        for e, c in self.color_of_path_edge.items():
            out[c].add(e)
        return out


def _class_is_path(edges: set) -> bool:
    if not edges:
        return False
    deg: dict = {}
    adj: dict = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(d > 2 for d in deg.values()):
        return False
    ends = [v for v, d in deg.items() if d == 1]
    if len(ends) != 2:
        return False
    prev, cur, walked = None, ends[0], 0
    while True:
        nxt = [y for y in adj[cur] if y != prev]
        if not nxt or (prev is not None and deg[cur] == 1):
            break
        prev, cur = cur, nxt[0]
        walked += 1
        if walked > len(edges):
            return False
    return walked == len(edges)


def _realize(s: Subdivision, assign: Sequence[str]) -> SubdivisionColoring | None:
    col = {}
    for p, c in zip(s.paths, assign):
        for a, b in zip(p, p[1:]):
            col[norm(a, b)] = c
    cls = {RED: set(), BLUE: set()}
    for e, c in col.items():
        cls[c].add(e)
    if not all(_class_is_path(cls[c]) for c in (RED, BLUE)):
        return None
    end = {}
    for u in s.roots:
        seen = [c for p, c in zip(s.paths, assign) if u in (p[0], p[-1])]
        once = [c for c in (RED, BLUE) if seen.count(c) == 1]
        if len(once) != 1:
            return None
        end[u] = once[0]
    return SubdivisionColoring(tuple(assign), col, end)


def _rotation_assignments(s: Subdivision, inactivate: Sequence[tuple]) -> list[tuple]:
    """Colorings read off root orders: red walks r[0]->r[1]->r[2]->r[3], blue
    walks r[1]... as in the two fixed K4 rotations."""
    if s.kind != K4 or not inactivate:
        return []
    u1, pi = inactivate[0]
    x, y = s.paths[pi][0], s.paths[pi][-1]
    rest = [r for r in s.roots if r not in (u1, x, y)]
    if len(rest) != 1:
        return []
    u4 = rest[0]
    outs = []
    for u2, u3 in ((x, y), (y, x)):
        lab = {1: u1, 2: u2, 3: u3, 4: u4}
        walks = [((3, 2, 1, 4), (1, 3, 4, 2)), ((4, 1, 3, 2), (1, 2, 4, 3))]
        for red, _blue in walks:
            red_pairs = {frozenset((lab[a], lab[b])) for a, b in zip(red, red[1:])}
            outs.append(tuple(RED if frozenset((p[0], p[-1])) in red_pairs else BLUE for p in s.paths))
    return outs


def two_color(s: Subdivision, inactivate: Sequence[tuple] = (), same: Sequence[tuple] = (),
              ends: dict | None = None) -> SubdivisionColoring:
    """Split E(S) into a red and a blue path.

    ``inactivate``: (root, path index) pairs whose path must not carry the
    color ending at the root. ``same``: pairs whose path must carry it.
    ``ends``: root -> required color ending there.
    """
    def fits(sc: SubdivisionColoring) -> bool:
        for u, i in inactivate:
            if sc.path_color[i] == sc.end_color[u]:
                return False
        for u, i in same:
            if sc.path_color[i] != sc.end_color[u]:
                return False
        for u, c in (ends or {}).items():
            if sc.end_color[u] != c:
                return False
        return True

    tried = []
    cands = _rotation_assignments(s, inactivate)
    cands += [tuple(RED if bits >> k & 1 == 0 else BLUE for k in range(len(s.paths)))
              for bits in range(1 << len(s.paths))]
    for assign in cands:
        sc = _realize(s, assign)
        if sc is None:
            continue
        if fits(sc):
            return sc
        tried.append(list(assign))
    raise Unsatisfiable("no 2-coloring meets the constraints", transcript=tried[:8])


def all_two_colorings(s: Subdivision) -> list[SubdivisionColoring]:
    out = []
    for bits in range(1 << len(s.paths)):
        if bits & 1:
            continue  # red/blue symmetry: path 0 is red
        sc = _realize(s, tuple(RED if bits >> k & 1 == 0 else BLUE for k in range(len(s.paths))))
        if sc is not None:
            out.append(sc)
    return out


# ---------------------------------------------------------------- problems

@dataclass
class ProblemReport:
    distant: list = field(default_factory=list)
    close: list = field(default_factory=list)
    settled: frozenset = frozenset()
    lone_settled: frozenset = frozenset()
    patterns: dict = field(default_factory=dict)
    status: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"distant": [[u, i, list(pair)] for u, i, pair in self.distant],
                "close": [list(gr) for gr in self.close],
                "settled": sorted(self.settled),
                "patterns": {str(k): v for k, v in self.patterns.items()},
                "status": {str(k): v for k, v in self.status.items()},
                "notes": list(self.notes)}


def distant_problems(g: Graph, s: Subdivision, view: RootView | None = None,
                     settled: set | None = None) -> list:
    vw = view or _view(g, s)
    if settled is None:
        settled = settled_roots(g, s, vw)[1]
    out = []
    rootset = set(s.roots)
    for u in s.roots:
        rn = vw.rn[u]
        if len(rn) != 2:
            continue
        v, vp = rn
        if not g.has_edge(v, vp) or {v, vp} & rootset:
            continue
        blockers = [x for x in s.roots if x != u and set(vw.rn[x]) & {v, vp}]
        if any(x not in settled for x in blockers):
            continue
        for i, p in enumerate(s.paths):
            if s.incident(i, u):
                continue
            inner = set(p[1:-1])
            if len(inner & {v, vp}) == 1:
                out.append((u, i, (v, vp)))
    return out


def classify_problems(g: Graph, s: Subdivision) -> ProblemReport:
    vw = _view(g, s)
    tags = patterns(g, s, vw)
    lone, settled = settled_roots(g, s, vw)
    distant = distant_problems(g, s, vw, settled)
    unsettled = [u for u in s.roots if u not in settled]
    share = {u: {x for x in unsettled if x != u and set(vw.rn[u]) & set(vw.rn[x])} for u in unsettled}
    close_roots = {u for u in unsettled if share[u]}
    groups = []
    seen: set = set()
    for u in sorted(close_roots):
        if u in seen:
            continue
        comp, stack = set(), [u]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(share[x])
        seen |= comp
        groups.append(tuple(sorted(comp)))
    distant_roots = {u for u, _, _ in distant}
    status = {}
    for u in s.roots:
        if u in settled:
            status[u] = "settled"
        elif u in close_roots:
            status[u] = "close"
        elif u in distant_roots:
            status[u] = "distant"
        else:
            status[u] = "plain"
    notes = []
    for u in s.roots:
        alone = not any(set(vw.rn[u]) & set(vw.rn[x]) for x in s.roots if x != u)
        if alone and u not in lone and u not in distant_roots:
            notes.append(f"isolated root {u} neither distant nor lone-settled")
    if s.kind == C4PLUS:
        for x, y in itertools.combinations(s.roots, 2):
            if s.link[frozenset((x, y))] == 1:
                if set(vw.rn[x]) & vw.on_s and set(vw.rn[y]) & vw.on_s:
                    notes.append(f"1-linked roots {x},{y} both touch the subdivision")
    return ProblemReport(distant, groups, frozenset(settled), frozenset(lone), tags, status, notes)


def subdivision_dot(g: Graph, s: Subdivision, sc: SubdivisionColoring | None = None) -> str:
    if sc is None:
        sc = all_two_colorings(s)[0] if all_two_colorings(s) else None
    colors = dict(sc.color_of_path_edge) if sc else {e: "purple" for e in s.edges()}
    return to_dot(g, highlight=s.roots, edge_colors=colors, name="S")
