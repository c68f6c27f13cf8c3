"""Random edge-disjoint (cycle, path) pairs inside random planar hosts."""

from __future__ import annotations

import random

import networkx as nx

from gallai.graph import Graph, norm
from gallai.oracle import random_planar_graph

# K5 minus {1,3}: its 5-cycle plus the Hamiltonian path through the other four edges
EXC_CYCLE = [0, 1, 2, 3, 4, 0]
EXC_PATH = [1, 4, 2, 0, 3]


def seq_edges(seq) -> list:
    return [norm(a, b) for a, b in zip(seq, seq[1:])]


def _random_cycle(g: Graph, rng: random.Random) -> list | None:
    basis = nx.cycle_basis(g.to_networkx())
    if not basis:
        return None
    cyc = rng.choice(basis)
    return cyc + [cyc[0]]


def random_pair(seed: int, exceptional_rate: float = 0.05):
    """Returns (host, cycle sequence, path sequence) with 1..5 shared vertices."""
    rng = random.Random(seed)
    if rng.random() < exceptional_rate:
        perm = list(range(5))
        rng.shuffle(perm)
        cyc = [perm[v] for v in EXC_CYCLE]
        path = [perm[v] for v in EXC_PATH]
        host = Graph.from_edges(5, seq_edges(cyc) + seq_edges(path))
        return host, cyc, path
    while True:
        n = rng.randint(5, 30)
        host = random_planar_graph(n, rng.randint(n, 3 * n - 6), rng.randrange(1 << 30))
        cyc = _random_cycle(host, rng)
        if cyc is None:
            continue
        used = set(seq_edges(cyc))
        on_cycle = set(cyc)
        start = rng.choice(cyc[:-1])
        path = [start]
        seen = {start}
        want = rng.randint(1, 5)
        for _ in range(rng.randint(1, 3 * n)):
            opts = [w for w in host.adj[path[-1]] if w not in seen and norm(path[-1], w) not in used]
            if not opts:
                break
            w = rng.choice(opts)
            if w in on_cycle and len(seen & on_cycle) >= want:
                continue
            path.append(w)
            seen.add(w)
        if len(path) >= 2 and 1 <= len(seen & on_cycle) <= 5:
            return host, cyc, path
