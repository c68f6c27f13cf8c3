"""Compiled kernel against the pure-Python fallback on the two hot loops:
exact minimum path cover and the labelled census enumeration.

    python3 benchmarks/bench_kernel.py [--graphs 40] [--n 6]
"""

from __future__ import annotations

import argparse
import time

from gallai import _oracle_py
from gallai.oracle import _forbidden, random_planar_graph

try:
    from gallai import _kernel
except ImportError:
    _kernel = None


def _time(fn, *args) -> tuple[float, object]:
    t = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t, out


def bench_cover(graphs: int, seed: int) -> None:
    cases = []
    for i in range(graphs):
        n = 7 + i % 4
        g = random_planar_graph(n, int(1.8 * n), seed + i)
        cases.append((g.n, g.sorted_edges()))
    rows = {}
    for name, impl in (("python", _oracle_py), ("compiled", _kernel)):
        if impl is None:
            continue
        total, results = 0.0, []
        for n, edges in cases:
            dt, res = _time(impl.min_path_cover, n, edges, 10_000_000)
            total += dt
            results.append(res[0])
        rows[name] = (total, results)
    report("min_path_cover", f"{graphs} random planar graphs, n 7..10", rows)


def bench_census(n: int) -> None:
    forbidden = list(_forbidden(n))
    rows = {}
    for name, impl in (("python", _oracle_py), ("compiled", _kernel)):
        if impl is None:
            continue
        dt, masks = _time(impl.connected_planar_masks, n, forbidden, 0, None)
        rows[name] = (dt, masks)
    report("connected_planar_masks", f"n={n}", rows)


def report(label: str, what: str, rows: dict) -> None:
    print(f"{label} ({what})")
    for name, (dt, _) in rows.items():
        print(f"  {name:9s} {dt:9.3f} s")
    if len(rows) == 2:
        (tp, rp), (tc, rc) = rows["python"], rows["compiled"]
        agree = "agree" if rp == rc else "DISAGREE"
        print(f"  speedup   {tp / max(tc, 1e-9):9.1f}x  results {agree}")
    else:
        print("  compiled kernel not built")


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--graphs", type=int, default=40)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    bench_cover(args.graphs, args.seed)
    bench_census(args.n)


if __name__ == "__main__":
    main()
