# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled twins of the hot loops in ``_oracle_py``: exact path cover and
the labelled connected-planar census filter. Edge and vertex sets are
uint64 bitmasks, so graphs are limited to 64 edges and 64 vertices."""

from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref

import itertools

from ._oracle_py import forbidden_masks, greedy_cover


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef struct Ctx:
    int n
    int m
    int eu[64]
    int ev[64]
    uint64_t inc[64]
    long long nodes
    long long budget
    bint over


cdef int lower_bound(Ctx* c, uint64_t mask) noexcept nogil:
    cdef int lb = 0, odd, x, y, ei, d, top, nv, ne, best
    cdef uint64_t rest = mask, comp_e, comp_v, frontier, es, b
    while rest:
        ei = ctz(rest)
        comp_v = (<uint64_t>1 << c.eu[ei]) | (<uint64_t>1 << c.ev[ei])
        comp_e = 0
        frontier = comp_v
        while frontier:
            x = ctz(frontier)
            frontier &= frontier - 1
            es = c.inc[x] & rest & ~comp_e
            comp_e |= es
            while es:
                ei = ctz(es)
                es &= es - 1
                y = c.ev[ei] if c.eu[ei] == x else c.eu[ei]
                b = <uint64_t>1 << y
                if not (comp_v & b):
                    comp_v |= b
                    frontier |= b
        odd = 0
        top = 0
        b = comp_v
        while b:
            x = ctz(b)
            b &= b - 1
            d = popc(c.inc[x] & comp_e)
            odd += d & 1
            if d > top:
                top = d
        nv = popc(comp_v)
        ne = popc(comp_e)
        best = odd // 2 if odd >= 2 else 1
        if (ne + nv - 2) // (nv - 1) > best:
            best = (ne + nv - 2) // (nv - 1)
        if (top + 1) // 2 > best:
            best = (top + 1) // 2
        lb += best
        rest &= ~comp_e
    return lb


cdef bint is_path(Ctx* c, uint64_t mask) noexcept nogil:
    cdef int start = -1, d, x, ei, walked = 0, cur, side
    cdef uint64_t rest = mask, seen = 0, es
    if mask == 0:
        return False
    while rest:
        ei = ctz(rest)
        rest &= rest - 1
        for side in range(2):
            x = c.eu[ei] if side == 0 else c.ev[ei]
            d = popc(c.inc[x] & mask)
            if d > 2:
                return False
            if d == 1:
                start = x
    if start < 0:
        return False
    cur = start
    while True:
        es = c.inc[cur] & mask & ~seen
        if not es:
            break
        ei = ctz(es)
        seen |= <uint64_t>1 << ei
        walked += 1
        cur = c.ev[ei] if c.eu[ei] == cur else c.eu[ei]
    return walked == popc(mask)


cdef void extend(Ctx* c, uint64_t mask, int tip, uint64_t used_v, uint64_t acc,
                 vector[uint64_t]* out) noexcept nogil:
    out.push_back(acc)
    cdef uint64_t es = c.inc[tip] & mask & ~acc
    cdef int ei, w
    while es:
        ei = ctz(es)
        es &= es - 1
        w = c.ev[ei] if c.eu[ei] == tip else c.eu[ei]
        if used_v & (<uint64_t>1 << w):
            continue
        extend(c, mask, w, used_v | (<uint64_t>1 << w), acc | (<uint64_t>1 << ei), out)


cdef void paths_through(Ctx* c, uint64_t mask, int e, vector[uint64_t]* out) noexcept nogil:
    cdef vector[uint64_t] lefts
    cdef int a = c.eu[e], b = c.ev[e], ei
    cdef uint64_t used, rest
    cdef size_t i
    extend(c, mask, a, (<uint64_t>1 << a) | (<uint64_t>1 << b), <uint64_t>1 << e, &lefts)
    for i in range(lefts.size()):
        used = 0
        rest = lefts[i]
        while rest:
            ei = ctz(rest)
            rest &= rest - 1
            used |= (<uint64_t>1 << c.eu[ei]) | (<uint64_t>1 << c.ev[ei])
        extend(c, mask, b, used, lefts[i], out)


cdef bint longer_first(uint64_t x, uint64_t y) noexcept nogil:
    cdef int px = popc(x), py = popc(y)
    if px != py:
        return px > py
    return x < y


cdef inline void remember(unordered_map[uint64_t, int]* failed, uint64_t mask, int k) noexcept nogil:
    cdef int prev = -1
    cdef unordered_map[uint64_t, int].iterator it = failed.find(mask)
    if it != failed.end():
        prev = deref(it).second
    if k > prev:
        failed[0][mask] = k


cdef bint cover(Ctx* c, uint64_t mask, int k, vector[uint64_t]* out,
                unordered_map[uint64_t, int]* failed) noexcept nogil:
    cdef vector[uint64_t] cands
    cdef size_t i
    cdef int e
    cdef unordered_map[uint64_t, int].iterator it
    if mask == 0:
        return True
    if k <= 0:
        return False
    c.nodes += 1
    if c.nodes > c.budget:
        c.over = True
        return False
    it = failed.find(mask)
    if it != failed.end() and deref(it).second >= k:
        return False
    if lower_bound(c, mask) > k:
        remember(failed, mask, k)
        return False
    if k == 1:
        if is_path(c, mask):
            out.push_back(mask)
            return True
        remember(failed, mask, k)
        return False
    e = ctz(mask)
    paths_through(c, mask, e, &cands)
    cpp_sort(cands.begin(), cands.end(), longer_first)
    for i in range(cands.size()):
        if cover(c, mask & ~cands[i], k - 1, out, failed):
            out.push_back(cands[i])
            return True
        if c.over:
            return False
    remember(failed, mask, k)
    return False


def min_path_cover(int n, edges, long long budget):
    """Same contract as ``_oracle_py.min_path_cover``."""
    cdef Ctx c
    cdef int i, k
    cdef bint found
    cdef uint64_t full
    cdef int m = len(edges)
    cdef vector[uint64_t] out
    cdef unordered_map[uint64_t, int] failed
    if m == 0:
        return 0, [], 0, False
    if m > 64 or n > 64:
        raise ValueError("compiled kernel handles at most 64 edges and 64 vertices")
    c.n = n
    c.m = m
    c.nodes = 0
    c.budget = budget
    c.over = False
    for i in range(n):
        c.inc[i] = 0
    for i, (u, v) in enumerate(edges):
        c.eu[i] = u
        c.ev[i] = v
        c.inc[u] |= <uint64_t>1 << i
        c.inc[v] |= <uint64_t>1 << i
    greedy = greedy_cover(n, edges)
    full = (<uint64_t>-1) if m == 64 else ((<uint64_t>1 << m) - 1)
    k = lower_bound(&c, full)
    while k < len(greedy):
        out.clear()
        with nogil:
            found = cover(&c, full, k, &out, &failed)
        if c.over:
            return len(greedy), greedy, c.nodes, True
        if found:
            return k, [int(out[i]) for i in range(<int>out.size() - 1, -1, -1)], c.nodes, False
        k += 1
    return len(greedy), greedy, c.nodes, False


def connected_planar_masks(int n, forbidden=None, lo=0, hi=None):
    """Same contract as ``_oracle_py.connected_planar_masks`` (n <= 11)."""
    if n <= 1:
        return [0]
    pairs = list(itertools.combinations(range(n), 2))
    cdef int m = len(pairs)
    cdef int pu[64]
    cdef int pv[64]
    cdef int i, x
    for i, (a, b) in enumerate(pairs):
        pu[i] = a
        pv[i] = b
    if forbidden is None:
        forbidden = forbidden_masks(n) if n >= 5 else []
    cdef vector[uint64_t] forb
    for fm in forbidden:
        forb.push_back(<uint64_t>fm)
    cdef uint64_t start = <uint64_t>lo
    cdef uint64_t stop = <uint64_t>((1 << m) if hi is None else hi)
    cdef uint64_t mask, rest, seen, frontier, nxt, f, full_v = (<uint64_t>1 << n) - 1
    cdef uint64_t nb[64]
    cdef size_t j
    cdef bint bad
    cdef vector[uint64_t] out
    with nogil:
        mask = start
        while mask < stop:
            if popc(mask) >= n - 1:
                for x in range(n):
                    nb[x] = 0
                rest = mask
                while rest:
                    i = ctz(rest)
                    rest &= rest - 1
                    nb[pu[i]] |= <uint64_t>1 << pv[i]
                    nb[pv[i]] |= <uint64_t>1 << pu[i]
                seen = 1
                frontier = 1
                while frontier:
                    nxt = 0
                    f = frontier
                    while f:
                        x = ctz(f)
                        f &= f - 1
                        nxt |= nb[x]
                    frontier = nxt & ~seen
                    seen |= nxt
                if seen == full_v:
                    bad = False
                    for j in range(forb.size()):
                        if forb[j] & mask == forb[j]:
                            bad = True
                            break
                    if not bad:
                        out.push_back(mask)
            mask += 1
    return [int(out[j]) for j in range(out.size())]
