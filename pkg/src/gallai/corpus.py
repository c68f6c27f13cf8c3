"""Planar triangulations of minimum degree 5. Random planar graphs almost
always contain two vertices of degree at most 4, so these are the inputs
that exercise the four-vertex branch."""

from __future__ import annotations

import random

import networkx as nx

from .graph import Graph, icosahedron, norm


def faces(g: Graph) -> list[tuple]:
    """Faces of a planar embedding as vertex tuples (triangles for a triangulation)."""
    planar, emb = nx.check_planarity(g.to_networkx())
    if not planar:
        raise ValueError("graph is not planar")
    seen = set()
    out = []
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        f = emb.traverse_face(u, v, mark_half_edges=seen)
        out.append(tuple(f))
    return out


def split_faces(g: Graph) -> Graph:
    """Replace every triangle by four: one new vertex per edge."""
    mid = {}
    n = g.n
    for e in g.sorted_edges():
        mid[e] = n
        n += 1
    es = set()
    for a, b in g.edges:
        es.add(norm(a, mid[norm(a, b)]))
        es.add(norm(b, mid[norm(a, b)]))
    for f in faces(g):
        if len(f) != 3:
            raise ValueError("split_faces needs a triangulation")
        a, b, c = f
        x, y, z = mid[norm(a, b)], mid[norm(b, c)], mid[norm(a, c)]
        es |= {norm(x, y), norm(y, z), norm(x, z)}
    return Graph(n, frozenset(es))


def glued_icosahedra() -> Graph:
    """Two icosahedra identified along one face (a separating triangle)."""
    a = icosahedron()
    f = next(t for t in faces(a) if len(t) == 3)
    b_map = {}
    nxt = a.n
    for v in range(a.n):
        if v in f:
            b_map[v] = v
        else:
            b_map[v] = nxt
            nxt += 1
    es = set(a.edges)
    for u, v in a.edges:
        es.add(norm(b_map[u], b_map[v]))
    return Graph(nxt, frozenset(es))


def random_flips(g: Graph, flips: int, seed: int, min_degree: int = 5) -> Graph:
    """Diagonal flips in a triangulation that keep the graph simple and the
    minimum degree at least ``min_degree``. Deterministic per seed."""
    rng = random.Random(f"flips:{g.n}:{flips}:{seed}")
    cur = g
    tries = 0
    done = 0
    while done < flips and tries < 50 * flips + 50:
        tries += 1
        tri = {}
        for f in faces(cur):
            if len(f) != 3:
                continue
            for i in range(3):
                e = norm(f[i], f[(i + 1) % 3])
                tri.setdefault(e, []).append(f[(i + 2) % 3])
        cands = sorted(e for e, opp in tri.items() if len(opp) == 2)
        a, b = rng.choice(cands)
        c, d = tri[(a, b)]
        if c == d or cur.has_edge(c, d):
            continue
        if cur.degree(a) - 1 < min_degree or cur.degree(b) - 1 < min_degree:
            continue
        cur = cur.with_edges(add=[norm(c, d)], remove=[norm(a, b)])
        done += 1
    return cur


def cii_corpus(count: int = 40, seed: int = 0) -> list[tuple[str, Graph]]:
    """Named minimum-degree-5 planar triangulations, base shapes first."""
    base = [("icosahedron", icosahedron()), ("glued-icosahedra", glued_icosahedra()),
            ("geodesic-icosahedron", split_faces(icosahedron()))]
    out = list(base)
    k = 0
    while len(out) < count:
        name, g = base[k % len(base)]
        out.append((f"{name}-flip{k}", random_flips(g, 4 + k % 9, seed * 1000 + k)))
        k += 1
    return out[:count]
