"""Pure-Python search kernels. ``_kernel.pyx`` mirrors these functions one for
one; ``oracle`` picks whichever is importable."""

from __future__ import annotations

import itertools


def pair_index(n: int) -> dict:
    """Bit index of each pair (i, j), i < j, in lexicographic order."""
    out = {}
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            out[(i, j)] = k
            k += 1
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Ctx:
    __slots__ = ("n", "m", "ends", "inc", "nodes", "budget", "failed")

    def __init__(self, n, edges, budget):
        self.n = n
        self.m = len(edges)
        self.ends = [tuple(e) for e in edges]
        self.inc = [0] * n
        for i, (u, v) in enumerate(edges):
            self.inc[u] |= 1 << i
            self.inc[v] |= 1 << i
        self.nodes = 0
        self.budget = budget
        self.failed = {}


def _lower_bound(ctx: _Ctx, mask: int) -> int:
    """Sum over non-trivial components of the largest of 1, odd/2,
    ceil(edges / (vertices - 1)) and ceil(max degree / 2)."""
    lb = 0
    rest = mask
    inc = ctx.inc
    ends = ctx.ends
    while rest:
        low = rest & -rest
        u, v = ends[low.bit_length() - 1]
        comp_v = {u, v}
        stack = [u, v]
        comp_e = 0
        while stack:
            x = stack.pop()
            es = inc[x] & rest & ~comp_e
            comp_e |= es
            while es:
                b = es & -es
                es ^= b
                a, c = ends[b.bit_length() - 1]
                y = c if a == x else a
                if y not in comp_v:
                    comp_v.add(y)
                    stack.append(y)
        odd = 0
        top = 0
        for x in comp_v:
            d = _popcount(inc[x] & comp_e)
            odd += d & 1
            top = max(top, d)
        ne = _popcount(comp_e)
        lb += max(1, odd // 2, -(-ne // (len(comp_v) - 1)), (top + 1) // 2)
        rest &= ~comp_e
    return lb


def _is_path(ctx: _Ctx, mask: int) -> bool:
    if mask == 0:
        return False
    inc = ctx.inc
    ends = ctx.ends
    start = -1
    rest = mask
    while rest:
        b = rest & -rest
        rest ^= b
        for x in ends[b.bit_length() - 1]:
            d = _popcount(inc[x] & mask)
            if d > 2:
                return False
            if d == 1:
                start = x
    if start < 0:
        return False
    # walk from one end; a path is consumed entirely by the walk
    walked = 0
    cur = start
    seen = 0
    while True:
        es = inc[cur] & mask & ~seen
        if not es:
            break
        b = es & -es
        seen |= b
        walked += 1
        x, y = ends[b.bit_length() - 1]
        cur = y if x == cur else x
    return walked == _popcount(mask)


def _paths_through(ctx: _Ctx, mask: int, e: int):
    """Yield edge masks of all simple paths inside ``mask`` that use edge e."""
    a, b = ctx.ends[e]
    inc = ctx.inc
    ends = ctx.ends
    ebit = 1 << e

    def extend(tip, used_v, acc, out):
        out.append(acc)
        es = inc[tip] & mask & ~acc
        while es:
            bit = es & -es
            es ^= bit
            x, y = ends[bit.bit_length() - 1]
            w = y if x == tip else x
            if w in used_v:
                continue
            used_v.add(w)
            extend(w, used_v, acc | bit, out)
            used_v.discard(w)

    lefts: list[int] = []
    extend(a, {a, b}, ebit, lefts)
    for left in lefts:
        used = {a, b}
        rest = left
        while rest:
            bit = rest & -rest
            rest ^= bit
            used.update(ends[bit.bit_length() - 1])
        rights: list[int] = []
        extend(b, used, left, rights)
        yield from rights


class _Budget(Exception):
    pass


def _cover(ctx: _Ctx, mask: int, k: int, out: list) -> bool:
    if mask == 0:
        return True
    if k <= 0:
        return False
    ctx.nodes += 1
    if ctx.nodes > ctx.budget:
        raise _Budget
    if ctx.failed.get(mask, -1) >= k:
        return False
    if _lower_bound(ctx, mask) > k:
        ctx.failed[mask] = max(ctx.failed.get(mask, -1), k)
        return False
    if k == 1:
        if _is_path(ctx, mask):
            out.append(mask)
            return True
        ctx.failed[mask] = max(ctx.failed.get(mask, -1), k)
        return False
    low = mask & -mask
    e = low.bit_length() - 1
    cands = sorted(set(_paths_through(ctx, mask, e)), key=lambda p: (-_popcount(p), p))
    for p in cands:
        if _cover(ctx, mask & ~p, k - 1, out):
            out.append(p)
            return True
    ctx.failed[mask] = max(ctx.failed.get(mask, -1), k)
    return False


def greedy_cover(n: int, edges, mask: int | None = None) -> list[int]:
    """Cheap upper bound: repeatedly peel the longest path through the lowest edge
    found by a single DFS greedy walk."""
    ctx = _Ctx(n, edges, 1 << 62)
    if mask is None:
        mask = (1 << len(edges)) - 1
    out = []
    while mask:
        low = mask & -mask
        e = low.bit_length() - 1
        best = low
        a, b = ctx.ends[e]
        used = {a, b}
        acc = low
        for tip in (a, b):
            cur = tip
            while True:
                es = ctx.inc[cur] & mask & ~acc
                nxt = None
                while es:
                    bit = es & -es
                    es ^= bit
                    x, y = ctx.ends[bit.bit_length() - 1]
                    w = y if x == cur else x
                    if w not in used:
                        nxt = (bit, w)
                        break
                if nxt is None:
                    break
                acc |= nxt[0]
                used.add(nxt[1])
                cur = nxt[1]
        best = acc
        out.append(best)
        mask &= ~best
    return out


def min_path_cover(n: int, edges, budget: int):
    """Exact minimum path cover by iterative deepening.

    Returns (k, path_masks, nodes, timed_out). On timeout the greedy cover is
    returned as the best known witness.
    """
    m = len(edges)
    full = (1 << m) - 1
    ctx = _Ctx(n, edges, budget)
    if m == 0:
        return 0, [], 0, False
    greedy = greedy_cover(n, edges)
    k = _lower_bound(ctx, full)
    while k < len(greedy):
        out: list[int] = []
        try:
            if _cover(ctx, full, k, out):
                return k, out[::-1], ctx.nodes, False
        except _Budget:
            return len(greedy), greedy, ctx.nodes, True
        k += 1
    return len(greedy), greedy, ctx.nodes, False


# ---------------------------------------------------------------- census

def forbidden_masks(n: int) -> list[int]:
    """Edge masks (pair_index order) of every K5- or K3,3-subdivision that
    fits on n labelled vertices, for n <= 7."""
    idx = pair_index(n)
    found = set()

    def bit(u, v):
        return 1 << idx[(u, v) if u < v else (v, u)]

    def subdivisions(branch_edges, spare):
        # assign each spare vertex to subdivide some branch edge (or nothing)
        spare = list(spare)
        results = []
        for k in range(len(spare) + 1):
            for chosen in itertools.combinations(spare, k):
                for order in itertools.permutations(chosen):
                    for targets in itertools.product(range(len(branch_edges)), repeat=k):
                        groups = {}
                        for vtx, t in zip(order, targets):
                            groups.setdefault(t, []).append(vtx)
                        # keep one canonical listing per set of paths
                        mask = 0
                        for t, (u, v) in enumerate(branch_edges):
                            chain = [u] + groups.get(t, []) + [v]
                            for x, y in zip(chain, chain[1:]):
                                mask |= bit(x, y)
                        results.append(mask)
        return results

    verts = range(n)
    for five in itertools.combinations(verts, 5):
        be = list(itertools.combinations(five, 2))
        spare = [v for v in verts if v not in five]
        found.update(subdivisions(be, spare))
    for six in itertools.combinations(verts, 6):
        first = six[0]
        for rest in itertools.combinations(six[1:], 2):
            side_a = (first,) + rest
            side_b = tuple(v for v in six if v not in side_a)
            be = [(a, b) for a in side_a for b in side_b]
            spare = [v for v in verts if v not in six]
            found.update(subdivisions(be, spare))
    return sorted(found, key=lambda x: (_popcount(x), x))


def connected_planar_masks(n: int, forbidden=None, lo: int = 0, hi: int | None = None) -> list[int]:
    """Masks in [lo, hi) of connected planar labelled graphs on n vertices."""
    if n <= 1:
        return [0]
    pairs = list(itertools.combinations(range(n), 2))
    m = len(pairs)
    if hi is None:
        hi = 1 << m
    if forbidden is None:
        forbidden = forbidden_masks(n) if n >= 5 else []
    out = []
    full_v = (1 << n) - 1
    for mask in range(lo, hi):
        if _popcount(mask) < n - 1:
            continue
        nb = [0] * n
        rest = mask
        while rest:
            b = rest & -rest
            rest ^= b
            u, v = pairs[b.bit_length() - 1]
            nb[u] |= 1 << v
            nb[v] |= 1 << u
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= nb[b.bit_length() - 1]
            frontier = nxt & ~seen
            seen |= nxt
        if seen != full_v:
            continue
        if any(f & mask == f for f in forbidden):
            continue
        out.append(mask)
    return out
