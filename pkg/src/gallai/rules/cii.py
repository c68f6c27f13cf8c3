"""Choosing the composite rule for four degree-5 vertices and a strong
subdivision, from the distant / close problem report."""

from __future__ import annotations

import itertools
from collections import Counter

from ..errors import UnmatchedCase
from ..graph import Graph
from ..subdivision import C4PLUS, K4, SEMI, ProblemReport, Subdivision
from .model import RuleMatch


def _match(rule_id, s: Subdivision, order, tr, report, **extra) -> RuleMatch:
    binding = {f"u{i + 1}": u for i, u in enumerate(order)}
    binding.update(extra)
    cons = {"inactivate": [(u, i) for u, i, _ in report.distant]}
    return RuleMatch(rule_id, binding, tuple(s.roots), subdivision=s, transcript=tr,
                     constraints=cons)


def _route(s: Subdivision, a: int, b: int) -> list:
    """The first path of S from a to b, oriented."""
    p = list(s.paths[s.between(a, b)[0]])
    return p if p[0] == a else p[::-1]


def _ends(s: Subdivision, i: int) -> tuple:
    p = s.paths[i]
    return (p[0], p[-1])


def _distant(g, s, report, tr) -> RuleMatch:
    tr.append(f"{len(report.distant)} distant problems")
    if s.kind != K4:
        raise UnmatchedCase("three or more distant problems on a C4+ subdivision", tr)
    touch = Counter(i for _, i, _ in report.distant)
    p1 = sum(1 for i in range(6) if touch[i] == 1)
    p2 = sum(1 for i in range(6) if touch[i] == 2)
    zero = [i for i in range(6) if touch[i] == 0]
    tr.append(f"p0={len(zero)} p1={p1} p2={p2}")
    roots = list(s.roots)
    k = len(report.distant)
    if k == 3 and p1 == 3:
        deg = Counter(x for i in zero for x in _ends(s, i))
        if len(deg) == 3 and all(d == 2 for d in deg.values()):
            apex = next(u for u in roots if u not in deg)
            order = sorted(deg) + [apex]
            tr.append("0-paths form a triangle")
            return _match("D1", s, order, tr, report)
        if all(d <= 2 for d in deg.values()) and len(deg) == 4:
            tr.append("0-paths form a path")
            ends = sorted(u for u, d in deg.items() if d == 1)
            mids = sorted(u for u, d in deg.items() if d == 2)
            return _match("D2", s, [ends[0], ends[1]] + mids, tr, report)
        raise UnmatchedCase("three 1-paths with 0-paths meeting at one root", tr)
    if (k == 3 and p1 == 1 and p2 == 1) or (k == 4 and p2 == 2):
        two = [i for i in range(6) if touch[i] == 2][0]
        a, b = _ends(s, two)
        rest = [u for u in roots if u not in (a, b)]
        return _match("D3", s, rest + [a, b], tr, report)
    if k == 4 and p1 == 4:
        if len(zero) == 2 and not set(_ends(s, zero[0])) & set(_ends(s, zero[1])):
            tr.append("disjoint 0-paths")
            return _match("D4", s, list(_ends(s, zero[0])) + list(_ends(s, zero[1])), tr, report)
        raise UnmatchedCase("four 1-paths with incident 0-paths", tr)
    raise UnmatchedCase(f"distant counts {k} with p1={p1}, p2={p2}", tr)


def _semi_distant(g, s, report, tr, vw_rn) -> RuleMatch:
    dist = report.distant
    same = len(dist) == 2 and dist[0][1] == dist[1][1]
    if s.kind == K4:
        if not same:
            tr.append("K4, at most one problem per path")
            return _match("J1", s, list(s.roots), tr, report)
        (u1, i, pair1), (u2, _, pair2) = dist
        u3, u4 = _ends(s, i)
        inner = set(s.paths[i][1:-1])
        v1p = next(x for x in pair1 if x not in inner)
        v2p = next(x for x in pair2 if x not in inner)
        between = _route(s, u1, u2)
        length = len(between) - 1
        tr.append(f"two problems on path {i}, l(u1~u2)={length}")
        rn3, rn4 = set(vw_rn[u3]), set(vw_rn[u4])
        if length == 1 and ({v1p, v2p} <= rn3 or {v1p, v2p} <= rn4):
            return _match("J3", s, [u1, u2, u3, u4], tr, report)
        if length == 2:
            w = between[1]
            if g.has_edge(w, u3) and g.has_edge(w, u4) and {v1p, v2p} <= rn3 | rn4:
                return _match("J4", s, [u1, u2, u3, u4], tr, report, w=w)
        return _match("J2", s, [u1, u2, u3, u4], tr, report)
    if not same:
        tr.append("C4+, at most one problem per path")
        return _match("J5", s, list(s.roots), tr, report)
    tr.append("C4+, two problems on one parallel path")
    return _match("J6", s, list(s.roots), tr, report)


def _close_c4(g, s, report, tr, rn) -> RuleMatch:
    a, b, c, d = s.roots
    # a-b and c-d are 2-linked, b-c and d-a 1-linked
    u1, u2, u3, u4 = b, c, a, d
    left = set(rn[u1]) | set(rn[u2])
    right = set(rn[u3]) | set(rn[u4])
    if not left & right:
        tr.append("1-linked pairs have disjoint remaining neighbors")
        return _match("R8", s, [u1, u2, u3, u4], tr, report)
    tr.append("2-linked roots share a remaining neighbor")
    return _match("R9", s, [u1, u2, u3, u4], tr, report)


def _close_k4(g, s, report, tr, rn, on_s) -> RuleMatch:
    groups = report.close
    involved = sorted({u for gr in groups for u in gr})
    others = lambda xs: [u for u in s.roots if u not in xs]
    tr.append(f"{len(involved)} roots in close problems")
    if len(involved) == 2:
        u1, u2 = involved
        shared = sorted(set(rn[u1]) & set(rn[u2]))
        off = [x for x in shared if x not in on_s]
        if off:
            v = off[0]
            if len(shared) == 1:
                return _match("R1", s, [u1, u2] + others(involved), tr, report, v=v)
            vp = next(x for x in shared if x != v)
            if vp in on_s:
                return _match("R2", s, [u1, u2] + others(involved), tr, report, v=v, vp=vp)
            raise UnmatchedCase("pair shares two remaining neighbors off S yet is unsettled", tr)
        v = shared[0]
        u3, u4 = others(involved)
        between = _route(s, u1, u2)
        if len(between) == 3:
            w = between[1]
            o1 = [x for x in rn[u1] if x != v]
            o2 = [x for x in rn[u2] if x != v]
            if all(g.has_edge(w, x) for x in (u3, u4)) and o1 and o2:
                if g.has_edge(u4, o1[0]) and g.has_edge(u3, o2[0]):
                    return _match("J4", s, [u1, u2, u3, u4], tr, report, w=w)
                if g.has_edge(u3, o1[0]) and g.has_edge(u4, o2[0]):
                    return _match("J4", s, [u1, u2, u4, u3], tr, report, w=w)
        return _match("R3", s, [u1, u2, u3, u4], tr, report, v=v)
    if len(involved) == 3:
        pairs = [(x, y) for x, y in itertools.combinations(involved, 2) if set(rn[x]) & set(rn[y])]
        for x, y in pairs:
            v13 = sorted(set(rn[x]) & set(rn[y]))[0]
            mid = next(u for u in involved if u not in (x, y))
            if v13 in on_s:
                continue
            o1 = [z for z in rn[x] if z != v13]
            o3 = [z for z in rn[y] if z != v13]
            u4 = others(involved)
            if o1 and o3 and o1[0] == o3[0]:
                return _match("R4", s, [x, mid, y] + u4, tr, report, v13=v13)
            return _match("R5", s, [x, mid, y] + u4, tr, report, v13=v13)
        raise UnmatchedCase("three roots whose shared neighbors all lie on S", tr)
    if len(involved) == 4:
        if len(groups) == 2:
            shared = set()
            for gr in groups:
                x, y = gr[0], gr[-1]
                shared |= set(rn[x]) & set(rn[y])
            order = list(groups[0]) + list(groups[1])
            if not shared & on_s:
                return _match("R6", s, order, tr, report)
            return _match("R3", s, order, tr, report)
        for x, y in itertools.combinations(involved, 2):
            if len(set(rn[x]) & set(rn[y])) >= 2:
                return _match("R7", s, [x, y] + others((x, y)), tr, report)
        return _match("R3", s, involved, tr, report)
    raise UnmatchedCase(f"close groups {groups}", tr)


def select_cii_composite(g: Graph, U, s: Subdivision, report: ProblemReport) -> RuleMatch:
    """Dispatch to a distant (D), semi-distant (J) or close (R) composite."""
    tr: list = [f"kind {s.kind}"]
    if set(U) != set(s.roots):
        raise UnmatchedCase("subdivision is not rooted on the family", tr)
    rn = {u: tuple(s.remaining_neighbors(g, u)) for u in s.roots}
    on_s = s.vertices()
    if len(report.distant) >= 3:
        return _distant(g, s, report, tr)
    if not report.close:
        return _semi_distant(g, s, report, tr, rn)
    if s.kind in (C4PLUS, SEMI):
        return _close_c4(g, s, report, tr, rn)
    return _close_k4(g, s, report, tr, rn, on_s)
