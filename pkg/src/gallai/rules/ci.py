"""Case tree for two special vertices of degree at most 4."""

from __future__ import annotations

import itertools

from ..errors import UnmatchedCase
from ..graph import Graph, bfs_path, components_avoiding
from .model import RuleMatch


def _rn(g: Graph, u: int, path: list) -> list:
    i = path.index(u)
    on_path = {path[j] for j in (i - 1, i + 1) if 0 <= j < len(path)}
    return sorted(x for x in g.adj[u] if x not in on_path)


def _odd(g: Graph, v: int) -> bool:
    return g.degree(v) % 2 == 1


def _separated(g: Graph, removed, a: int, b: int) -> bool:
    for comp in components_avoiding(g, removed):
        if a in comp:
            return b not in comp
    return True


def _composite(rule_id, u1, u2, path, tr, **roles) -> RuleMatch:
    binding = {"u1": u1, "u2": u2, **roles}
    return RuleMatch(rule_id, binding, (u1, u2), tuple(path), transcript=tr)


def _leaf(rule_id, special, tr, **roles) -> RuleMatch:
    return RuleMatch(rule_id, dict(roles), tuple(special), transcript=tr)


def match_ci_rule(g: Graph, u1: int, u2: int) -> RuleMatch:
    """Walk the case tree for the pair (u1, u2); the leaf's bindings use the
    roles of the catalog (u1, u2, v, w, v1 ...)."""
    tr: list = []
    if u1 == u2 or max(g.degree(u1), g.degree(u2)) > 4 or min(g.degree(u1), g.degree(u2)) < 1:
        raise UnmatchedCase("not a 2-family", [f"degrees {g.degree(u1)}, {g.degree(u2)}"])
    path = bfs_path(g, u1, u2)
    if path is None:
        raise UnmatchedCase("special vertices are not connected", tr)
    common = sorted(set(_rn(g, u1, path)) & set(_rn(g, u2, path)))
    tr.append(f"shortest path length {len(path) - 1}, {len(common)} common remaining neighbors")
    if not common:
        tr.append("C0C")
        return _composite("CNP+CNP", u1, u2, path, tr)
    if len(path) > 3:
        raise UnmatchedCase("common neighbor but distance above 2", tr)
    if len(common) == 1:
        return _one_common(g, u1, u2, path, common[0], tr)
    if len(common) == 2:
        return _two_common(g, u1, u2, path, tr)
    if len(common) == 3:
        tr.append("C3C")
        if g.degree(u1) != 4 or g.degree(u2) != 4:
            raise UnmatchedCase("three common neighbors need degree 4", tr)
        adjacent = any(g.has_edge(a, b) for a, b in itertools.combinations(common, 2))
        v, vp, vpp = common
        return _leaf("Xo" if adjacent else "Xn", (u1, u2), tr, u1=u1, u2=u2, v=v, vp=vp, vpp=vpp)
    raise UnmatchedCase(f"{len(common)} common remaining neighbors", tr)


def _one_common(g, u1, u2, path, v, tr) -> RuleMatch:
    tr.append("C1C")
    for a, b in ((u1, u2), (u2, u1)):
        far = [x for x in _rn(g, a, path) if x != v and not g.has_edge(x, v)]
        if far:
            tr.append("C1Ca")
            pa = path if a == path[0] else path[::-1]
            return _composite("CV++CNP", a, b, pa, tr, v=v, v1=far[0])
    twos = [x for x in (u1, u2) if g.degree(x) == 2]
    if twos:
        tr.append("TwoAny")
        a = twos[0]
        b = u2 if a == u1 else u1
        if len(path) == 2:
            if g.degree(b) == 2:
                if g.degree(v) < 3:
                    raise UnmatchedCase("graph is a triangle", tr)
                tr.append("adjacent, both degree 2")
                return _leaf("Xr", (a, b), tr, u1=a, u2=b, v=v)
            tr.append("adjacent, u2 of degree >= 3")
            return _leaf("Xp", (a, b), tr, u1=a, u2=b, v=v)
        w = path[1]
        if not g.has_edge(v, w):
            tr.append("TwoTwoN" if g.degree(b) == 2 else "XXu")
            return _leaf("Ctilde", (a,), tr, u1=a, v=v, w=w)
        if g.degree(b) == 2:
            rid = "Xs" if _odd(g, v) or _odd(g, w) else "Xt"
            tr.append("v, w adjacent, parity split")
            return _leaf(rid, (a, b), tr, u1=a, u2=b, v=v, w=w)
        tr.append("v, w adjacent, u2 of degree >= 3")
        return _leaf("Xup", (a, b), tr, u1=a, u2=b, v=v, w=w)
    if len(path) == 3:
        w = path[1]
        for a, b in ((u1, u2), (u2, u1)):
            far = [x for x in g.adj[a] if x not in (v, w) and not g.has_edge(x, w)]
            if far:
                tr.append("rerouted through v")
                tr.append("C1Ca")
                return _composite("CV++CNP", a, b, (a, v, b), tr, v=w, v1=far[0])
        tr.append("Rx")
        others1 = [x for x in g.adj[u1] if x not in (v, w)]
        others2 = [x for x in g.adj[u2] if x not in (v, w)]
        if not others1 or not others2:
            raise UnmatchedCase("Rx needs a further neighbor on each side", tr)
        roles = dict(u1=u1, u2=u2, v1=v, v2=w)
        if not g.has_edge(v, w):
            return _leaf("Xe", (u1, u2), tr, v3=others1[0], v4=others2[0], **roles)
        for x3, x4 in itertools.product(others1, others2):
            if x3 != x4 and _separated(g, (u1, u2, v, w), x3, x4):
                tr.append("separating pair")
                return _leaf("Xg", (u1, u2), tr, v3=x3, v4=x4, **roles)
        return _leaf("Xf", (u1, u2), tr, v3=others1[0], v4=others2[0], **roles)
    if g.degree(u1) == 3 and g.degree(u2) == 3:
        tr.append("TTb")
        o1 = next(x for x in _rn(g, u1, path) if x != v)
        o2 = next(x for x in _rn(g, u2, path) if x != v)
        for a, b, x, y in ((u1, u2, o1, o2), (u2, u1, o2, o1)):
            if not _odd(g, x):
                return _leaf("Xa", (a, b), tr, u1=a, u2=b, v=v, v1=x, v2=y)
        if _odd(g, v):
            tr.append("XXb")
            rid = "Xbb" if g.has_edge(o1, o2) else "Xd"
            return _leaf(rid, (u1, u2), tr, u1=u1, u2=u2, v=v, v1=o1, v2=o2)
        return _leaf("Xc", (u1, u2), tr, u1=u1, u2=u2, v=v, v1=o1, v2=o2)
    tr.append("FFb")
    a, b = (u1, u2) if g.degree(u2) == 4 else (u2, u1)
    return _leaf("Xd", (a, b), tr, u1=a, u2=b, v=v)


def _two_common(g, u1, u2, path, tr) -> RuleMatch:
    tr.append("C2C")
    cn = sorted(set(g.adj[u1]) & set(g.adj[u2]))
    rn_common = [x for x in cn if x not in path]
    pairs = [p for p in itertools.combinations(cn, 2) if not g.has_edge(*p)]
    pairs.sort(key=lambda p: (not set(p) <= set(rn_common), p))
    if pairs:
        v, vp = pairs[0]
        if len(path) == 3 and path[1] in (v, vp):
            mid = next(x for x in cn if x not in (v, vp))
            path = [u1, mid, u2]
            tr.append("rerouted so the nonadjacent pair is remaining")
        if 4 in (g.degree(u1), g.degree(u2)):
            tr.append("Crr")
            a, b = (u1, u2) if g.degree(u2) == 4 else (u2, u1)
            others = [x for x in _rn(g, a, path) + _rn(g, b, path) if x not in (v, vp)]
            rid = "Xh" if any(not (g.has_edge(x, v) and g.has_edge(x, vp)) for x in others) else "Xi"
            return _leaf(rid, (a, b), tr, u1=a, u2=b, v=v, vp=vp)
        rid = "Xj" if not (_odd(g, v) and _odd(g, vp)) else "Xk"
        return _leaf(rid, (u1, u2), tr, u1=u1, u2=u2, v=v, vp=vp)
    v, vp = rn_common[:2]
    if len(path) == 2:
        return _leaf("Xm", (u1, u2), tr, u1=u1, u2=u2, v=v, vp=vp)
    rid = "Xl" if g.degree(u1) == 3 and g.degree(u2) == 3 else "Xlp"
    return _leaf(rid, (u1, u2), tr, u1=u1, u2=u2, v=v, vp=vp, vpp=path[1])
