"""Simple undirected graphs on dense integer ids, plus the I/O and
connectivity helpers every other module leans on."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import DuplicateEdge, Loop, ParseError

Edge = tuple[int, int]


def norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n) or u > v:
                raise ValueError(f"bad edge {(u, v)} for n={self.n}")
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "adj", tuple(tuple(sorted(x)) for x in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        es = set()
        for u, v in edges:
            e = norm(int(u), int(v))
            if e[0] == e[1]:
                raise ValueError(f"loop at {e[0]}")
            if e in es:
                raise ValueError(f"duplicate edge {e}")
            es.add(e)
        return cls(n, frozenset(es))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def incident(self, v: int) -> list[Edge]:
        return [norm(v, w) for w in self.adj[v]]

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> "Graph":
        es = set(self.edges)
        for e in remove:
            es.discard(norm(*e))
        for e in add:
            es.add(norm(*e))
        return Graph(self.n, frozenset(es))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1; returns (graph, old ids)."""
        old = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(old)}
        es = [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        return Graph(len(old), frozenset(norm(*e) for e in es)), old

    def relabel_edges(self, vertices: Sequence[int], edges: Iterable[Edge]) -> "Graph":
        idx = {v: i for i, v in enumerate(vertices)}
        return Graph(len(vertices), frozenset(norm(idx[u], idx[v]) for u, v in edges))

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- parsing

def _looks_like_graph6(text: str) -> bool:
    body = text.strip()
    if body.startswith(">>graph6<<"):
        return True
    if not body or "\n" in body or " " in body or "\t" in body:
        return False
    if body.isdigit():
        return False
    return all(63 <= ord(ch) <= 126 for ch in body)


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse an edge list ("u v" per line, '#' comments) or a graph6 string."""
    if fmt == "auto":
        fmt = "graph6" if _looks_like_graph6(text) else "edgelist"
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt != "edgelist":
        raise ValueError(f"unknown format {fmt!r}")
    edges: list[tuple[int, int, int]] = []
    seen: set[Edge] = set()
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two vertex ids, got {len(parts)} fields")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, "vertex ids must be decimal integers") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, "vertex ids must be non-negative")
        if u == v:
            raise Loop(lineno, f"loop at vertex {u}")
        e = norm(u, v)
        if e in seen:
            raise DuplicateEdge(lineno, f"duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        top = max(top, u, v)
    return Graph(top + 1, frozenset(seen))


def _g6_size(data: str) -> tuple[int, int]:
    if not data:
        raise ParseError(1, "empty graph6 string")
    vals = [ord(c) - 63 for c in data]
    if any(x < 0 or x > 63 for x in vals):
        raise ParseError(1, "graph6 characters must lie in range 63..126")
    if vals[0] != 63:
        return vals[0], 1
    if len(vals) > 1 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError(1, "truncated graph6 size field")
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        return n, 8
    if len(vals) < 4:
        raise ParseError(1, "truncated graph6 size field")
    return (vals[1] << 12) | (vals[2] << 6) | vals[3], 4


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    n, offset = _g6_size(data)
    body = [ord(c) - 63 for c in data[offset:]]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise ParseError(1, f"graph6 body has {len(body)} bytes, expected {need}")
    if any(x < 0 or x > 63 for x in body):
        raise ParseError(1, "graph6 characters must lie in range 63..126")
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.add((i, j))
            k += 1
    return Graph(n, frozenset(edges))


def to_graph6(g: Graph, header: bool = False) -> str:
    n = g.n
    if n < 63:
        out = [n]
    elif n < 258048:
        out = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        out = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        out.append(x)
    s = "".join(chr(x + 63) for x in out)
    return (">>graph6<<" + s) if header else s


def to_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.sorted_edges())


def to_dot(g: Graph, highlight: Iterable[int] = (), edge_colors: dict | None = None,
           name: str = "G") -> str:
    hl = set(highlight)
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        attr = ' [style=filled, fillcolor="gold"]' if v in hl else ""
        lines.append(f"  {v}{attr};")
    for u, v in g.sorted_edges():
        col = (edge_colors or {}).get((u, v))
        attr = f' [color="{col}"]' if col else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- structure

def is_planar(g: Graph) -> bool:
    if g.m <= 8 or g.n <= 4:
        return True
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    planar, _ = nx.check_planarity(g.to_networkx())
    return bool(planar)


def planar_embedding(g: Graph) -> dict[int, list[int]] | None:
    """Rotation system (clockwise neighbour order per vertex), or None."""
    planar, emb = nx.check_planarity(g.to_networkx())
    if not planar:
        return None
    return {v: list(emb.neighbors_cw_order(v)) for v in range(g.n)}


def components_avoiding(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    gone = set(removed)
    seen = [False] * g.n
    for v in gone:
        seen[v] = True
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    dq.append(y)
        comps.append(sorted(comp))
    return comps


def connected_components(g: Graph) -> list[set[int]]:
    return [set(c) for c in components_avoiding(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components_avoiding(g)) == 1


def bfs_path(g: Graph, s: int, t: int, avoid: Iterable[int] = ()) -> list[int] | None:
    """Shortest (s,t)-path as a vertex list, lexicographically first among
    shortest ones (neighbours scanned in increasing order)."""
    if s == t:
        return [s]
    block = set(avoid)
    prev = {s: None}
    dq = deque([s])
    while dq:
        x = dq.popleft()
        for y in g.adj[x]:
            if y in prev or (y in block and y != t):
                continue
            prev[y] = x
            if y == t:
                path = [t]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            dq.append(y)
    return None


@dataclass(frozen=True)
class VertexCut:
    vertices: frozenset
    separated_witness: tuple[int, int]

    def __len__(self) -> int:
        return len(self.vertices)


def _articulation_points(g: Graph, removed: set[int]) -> set[int]:
    """Cut vertices of g - removed (iterative Hopcroft-Tarjan)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out: set[int] = set()
    timer = 0
    for root in range(n):
        if root in removed or disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w in removed:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.adj[w])))
                    if v == root:
                        children += 1
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    out.add(p)
        if children > 1:
            out.add(root)
    return out


def cut_witness(g: Graph, cut: Iterable[int]) -> tuple[int, int] | None:
    comps = components_avoiding(g, cut)
    if len(comps) < 2:
        return None
    return (comps[0][0], comps[1][0])


def enumerate_cuts(g: Graph, k: int) -> list[VertexCut]:
    """All vertex sets of size 1..k whose removal disconnects g, each with a
    witness pair. Sorted by (size, sorted vertices)."""
    if not 1 <= k <= 3:
        raise ValueError("k must be 1, 2 or 3")
    found: set[frozenset] = set()
    for size in range(0, k):
        for base in itertools.combinations(range(g.n), size):
            rem = set(base)
            comps = components_avoiding(g, rem)
            if size >= 1 and len(comps) >= 2:
                found.add(frozenset(rem))
            if g.n - size < 3:
                continue
            if len(comps) >= 2:
                # still disconnected after deleting c, unless c was one side
                # of a two-way split
                for c in range(g.n):
                    if c in rem:
                        continue
                    if len(comps) == 2 and any(cc == [c] for cc in comps):
                        continue
                    found.add(frozenset(rem | {c}))
            else:
                for c in _articulation_points(g, rem):
                    found.add(frozenset(rem | {c}))
    out = []
    for cut in found:
        w = cut_witness(g, cut)
        if w is not None:
            out.append(VertexCut(cut, w))
    out.sort(key=lambda c: (len(c.vertices), sorted(c.vertices)))
    return out


class ExceptionKind(str, Enum):
    K3 = "K3"
    K5minus = "K5minus"
    Other = "Other"


def classify_exception(g: Graph) -> ExceptionKind:
    if g.n == 3 and g.m == 3:
        return ExceptionKind.K3
    if g.n == 5 and g.m == 9:
        return ExceptionKind.K5minus
    return ExceptionKind.Other


def odd_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if len(g.adj[v]) % 2]


# ---------------------------------------------------------------- families

def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset(norm(i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def k5_minus(missing: Edge = (0, 4)) -> Graph:
    return complete_graph(5).with_edges(remove=[missing])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


def octahedron() -> Graph:
    # K_{2,2,2}: antipodal pairs (0,1), (2,3), (4,5)
    return Graph(6, frozenset((u, v) for u, v in itertools.combinations(range(6), 2)
                              if u // 2 != v // 2))


def icosahedron() -> Graph:
    return Graph(12, frozenset(norm(u, v) for u, v in nx.icosahedral_graph().edges()))


def wheel(rim: int) -> Graph:
    es = [(0, i) for i in range(1, rim + 1)]
    es += [norm(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph(rim + 1, frozenset(es))
