"""Locating a 2-family of low-degree vertices, or else four degree-5 vertices
with respect to which the graph is almost 4-connected, via minimal
2-contractions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotFound
from .graph import (Graph, VertexCut, bfs_path, components_avoiding, enumerate_cuts,
                    norm)


def find_ci(g: Graph) -> tuple[int, int] | None:
    low = sorted((g.degree(v), v) for v in range(g.n) if g.degree(v) <= 4)
    if len(low) < 2:
        return None
    return tuple(sorted((low[0][1], low[1][1])))


@dataclass(frozen=True)
class AlmostCheck:
    ok: bool
    cut: VertexCut | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _almost_violation(g: Graph, U: Iterable[int], cuts: list[VertexCut]) -> AlmostCheck:
    us = sorted(set(U))
    for cut in cuts:
        comps = components_avoiding(g, cut.vertices)
        where = {}
        for i, comp in enumerate(comps):
            for v in comp:
                where[v] = i
        outside = [u for u in us if u not in cut.vertices]
        if len({where[u] for u in outside}) > 1:
            a, b = [u for u in outside][:2]
            pair = next((x, y) for x, y in itertools.combinations(outside, 2) if where[x] != where[y])
            return AlmostCheck(False, VertexCut(cut.vertices, pair),
                               f"cut {sorted(cut.vertices)} separates special vertices {pair}")
        for u in us:
            if u not in cut.vertices:
                continue
            nb = [w for w in g.adj[u] if w not in cut.vertices]
            for x, y in itertools.combinations(nb, 2):
                if where[x] != where[y]:
                    return AlmostCheck(False, VertexCut(cut.vertices, (x, y)),
                                       f"cut {sorted(cut.vertices)} separates neighbours {x},{y} of {u}")
    return AlmostCheck(True)


def is_almost_4_connected(g: Graph, U: Iterable[int]) -> AlmostCheck:
    us = list(U)
    if len(set(us)) != 4:
        raise ValueError("U must hold four distinct vertices")
    return _almost_violation(g, us, enumerate_cuts(g, 3))


# ---------------------------------------------------------------- contractions

@dataclass(frozen=True)
class Contraction:
    vertices: frozenset
    damaged: tuple
    bridge_path: tuple = ()

    def graph(self, g: Graph) -> tuple[Graph, list[int]]:
        """H as a relabelled graph: G[vertices] plus the damaged pair's edge."""
        old = sorted(self.vertices)
        idx = {v: i for i, v in enumerate(old)}
        es = {(idx[u], idx[v]) for u, v in g.edges if u in idx and v in idx}
        if len(self.damaged) == 2:
            a, b = self.damaged
            es.add(norm(idx[a], idx[b]))
        return Graph(len(old), frozenset(norm(*e) for e in es)), old


def _local_view(g: Graph, h: Contraction):
    hg, old = h.graph(g)
    idx = {v: i for i, v in enumerate(old)}
    return hg, old, idx


def _bridge_in_g(g: Graph, h: Contraction, path_in_h: list[int]) -> tuple:
    """Expand a path of H (original labels) into a path of G by replacing the
    virtual damaged edge with the stored bridge."""
    out: list[int] = [path_in_h[0]]
    a, b = h.damaged
    for x, y in zip(path_in_h, path_in_h[1:]):
        if {x, y} == {a, b} and not g.has_edge(x, y):
            seg = list(h.bridge_path)
            if seg[0] != x:
                seg.reverse()
            out.extend(seg[1:])
        else:
            out.append(y)
    return tuple(out)


def _descend_once(g: Graph, h: Contraction) -> Contraction | None:
    hg, old, idx = _local_view(g, h)
    dam = {idx[d] for d in h.damaged}
    for cut in enumerate_cuts(hg, 2):
        comps = components_avoiding(hg, cut.vertices)
        for comp in comps:
            if dam & set(comp):
                continue
            if len(cut.vertices) == 1:
                (x,) = tuple(cut.vertices)
                if len(comp) + 1 < 3:
                    continue
                y = min(w for w in hg.adj[x] if w in set(comp))
                verts = frozenset(old[v] for v in comp) | {old[x]}
                return Contraction(verts, (old[x], old[y]), (old[x], old[y]))
            x1, x2 = sorted(cut.vertices)
            inside = set(comp)
            path = bfs_path(hg, x1, x2, avoid=inside)
            if path is None:
                continue
            bridge = _bridge_in_g(g, h, [old[v] for v in path])
            verts = frozenset(old[v] for v in comp) | {old[x1], old[x2]}
            return Contraction(verts, (old[x1], old[x2]), bridge)
    return None


def minimal_2_contraction(g: Graph, start: tuple[int, int] | None = None) -> Contraction:
    if g.n < 3:
        raise ValueError("needs at least 3 vertices")
    if start is None:
        low = [v for v in range(g.n) if g.degree(v) <= 4]
        u1 = low[0] if len(low) == 1 else 0
        u2 = min(g.adj[u1])
    else:
        u1, u2 = start
    h = Contraction(frozenset(range(g.n)), (u1, u2), (u1, u2))
    while True:
        nxt = _descend_once(g, h)
        if nxt is None:
            return h
        h = nxt


def check_contraction(g: Graph, h: Contraction) -> list[str]:
    """Invariant violations of a 2-contraction (empty list when valid)."""
    problems = []
    hg, old, idx = _local_view(g, h)
    if len(old) < 3:
        problems.append("fewer than 3 vertices")
    for v in old:
        if v in h.damaged:
            continue
        if hg.degree(idx[v]) != g.degree(v):
            problems.append(f"vertex {v} lost degree")
    a, b = h.damaged
    br = list(h.bridge_path)
    if br[0] not in (a, b) or br[-1] not in (a, b) or br[0] == br[-1]:
        problems.append("bridge does not join the damaged pair")
    for x, y in zip(br, br[1:]):
        if not g.has_edge(x, y):
            problems.append(f"bridge uses non-edge {x}-{y}")
    if any(v in h.vertices for v in br[1:-1]):
        problems.append("bridge passes through H")
    return problems


# ---------------------------------------------------------------- configuration

@dataclass
class ConfigurationWitness:
    kind: str
    ci_pair: tuple | None = None
    four_family: tuple | None = None
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind,
                "ci_pair": list(self.ci_pair) if self.ci_pair else None,
                "four_family": list(self.four_family) if self.four_family else None,
                "certificate": self.certificate}


def _euler_slack(hg: Graph) -> int:
    return sum(hg.degree(v) - 6 for v in range(hg.n))


def _four_family_candidates(g: Graph, h: Contraction):
    """Yield (label, candidate 4-family) in the order the extraction tries them."""
    hg, old, idx = _local_view(g, h)
    dam = {idx[d] for d in h.damaged}
    fives = [v for v in range(hg.n) if v not in dam and hg.degree(v) == 5]
    cuts3 = [c for c in enumerate_cuts(hg, 3) if len(c.vertices) == 3]
    if not cuts3:
        if len(fives) >= 4:
            yield "four-connected", tuple(old[v] for v in fives[:4]), None
        return
    cands = []
    for cut in cuts3:
        for comp in components_avoiding(hg, cut.vertices):
            if dam & set(comp):
                continue
            cands.append((len(comp), sorted(cut.vertices), comp))
    cands.sort(key=lambda t: (t[0], t[1], t[2][0]))
    for size, cut, comp in cands:
        inner = [v for v in comp if v in set(fives)]
        if len(inner) >= 4:
            yield "three-cut", tuple(old[v] for v in inner[:4]), [old[v] for v in cut]


def find_configuration(g: Graph) -> ConfigurationWitness:
    if g.n < 3:
        raise ValueError("needs at least 3 vertices")
    pair = find_ci(g)
    if pair is not None:
        return ConfigurationWitness("CI", ci_pair=pair)
    h = minimal_2_contraction(g)
    hg, old, idx = _local_view(g, h)
    dam = {idx[d] for d in h.damaged}
    low = [old[v] for v in range(hg.n) if v not in dam and hg.degree(v) <= 4]
    if low:
        # a non-damaged low vertex keeps its degree in g
        lows = sorted(set(low) | {v for v in range(g.n) if g.degree(v) <= 4})
        if len(lows) >= 2:
            return ConfigurationWitness("CI", ci_pair=(lows[0], lows[1]),
                                        certificate={"via": "contraction"})
    tried = 0
    for how, fam, cut in _four_family_candidates(g, h):
        tried += 1
        chk = is_almost_4_connected(g, fam)
        if not chk.ok:
            continue
        cert = {
            "contraction": sorted(h.vertices),
            "damaged": list(h.damaged),
            "selection": how,
            "cut": cut,
            "candidates_tried": tried,
            "almost_4_connected": True,
        }
        if hg.n and not cut:
            cert["euler_slack"] = _euler_slack(hg)
        return ConfigurationWitness("CII", four_family=tuple(sorted(fam)), certificate=cert)
    raise NotFound(f"no configuration located (candidates tried: {tried})")


def certify_witness(g: Graph, w: ConfigurationWitness) -> list[str]:
    """Re-check a witness from scratch; empty list when it holds."""
    if w.kind == "CI":
        if not w.ci_pair or len(set(w.ci_pair)) != 2:
            return ["CI witness needs two distinct vertices"]
        return [f"vertex {u} has degree {g.degree(u)}" for u in w.ci_pair if g.degree(u) > 4]
    if w.kind != "CII" or not w.four_family or len(set(w.four_family)) != 4:
        return ["CII witness needs four distinct vertices"]
    out = [f"vertex {u} has degree {g.degree(u)}" for u in w.four_family if g.degree(u) != 5]
    chk = is_almost_4_connected(g, w.four_family)
    if not chk.ok:
        out.append(chk.reason)
    return out
