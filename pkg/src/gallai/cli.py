"""Command-line entry point.

Exit codes: 0 ok, 1 input error, 2 bound missed or census/fuzz failures,
3 verification failed."""

from __future__ import annotations

import argparse
import json
import sys

from .coloring import coloring_from_json, expected_relaxed, verify_good_coloring
from .decompose import DecomposeOptions, decompose
from .errors import ColoringDomainMismatch, GallaiError, NotFound, ParseError, PreconditionViolated
from .graph import Graph, is_connected, is_planar, parse_graph, to_dot

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SOFT = 2
EXIT_VERIFY = 3


class InputError(Exception):
    pass


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str | None, fmt: str = "auto") -> Graph:
    try:
        return parse_graph(_read(path), fmt)
    except ParseError as exc:
        raise InputError(f"parse error: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def describe_violation(kind: str, wit) -> str:
    if kind == "cycle":
        return f"color {wit['color']} is a cycle {wit['cycle']}"
    if kind == "budget":
        return f"{wit['colors']} colors exceed the budget of {wit['budget']}"
    if kind == "invalid-class":
        return f"color {wit['color']} is not a path: {wit['reason']}"
    return f"{kind}: {wit}"


# ---------------------------------------------------------------- commands

def cmd_decompose(args) -> int:
    g = _load_graph(args.input, args.format)
    opts = DecomposeOptions(exact_threshold=args.exact_threshold, seed=args.seed)
    try:
        coloring, trace = decompose(g, opts)
    except PreconditionViolated as exc:
        raise InputError(str(exc)) from None
    doc = json.loads(coloring.to_json(g.n, trace.relaxed))
    doc.update(bound=trace.bound, colors=coloring.count, meets_bound=trace.meets_bound)
    if args.trace:
        doc["trace"] = trace.to_dict()
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(g, edge_colors=dict(coloring.color_of)))
    verdict = (f"{'ok' if trace.meets_bound else 'over bound'}: {coloring.count} paths, "
               f"bound {trace.bound}{' (relaxed)' if trace.relaxed else ''}")
    if args.json:
        doc["verdict"] = verdict
        _emit(doc)
    else:
        _emit(doc)
        print(verdict)
    if not trace.meets_bound:
        for line in trace.diagnostics + [f"fallback on n={f['n']} m={f['m']} via {f['via']}"
                                         for f in trace.fallbacks]:
            print(line, file=sys.stderr)
        return EXIT_SOFT
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph, args.format)
    try:
        c, data = coloring_from_json(_read(args.decomposition))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise InputError(f"bad decomposition: {exc}") from None
    if "n" in data and data["n"] != g.n:
        raise InputError(f"decomposition is for n={data['n']}, graph has n={g.n}")
    relaxed = expected_relaxed(g)
    rep = verify_good_coloring(g, c, relaxed_budget=relaxed)
    messages = [describe_violation(k, w) for k, w in rep.violations]
    messages += [f"path {i} uses an edge twice" for i in data["repeated"]]
    ok = not messages
    _emit({"ok": ok, "colors": rep.color_count, "budget": rep.budget, "relaxed_budget": relaxed,
           "violations": messages})
    for m in messages:
        print(m)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_census(args) -> int:
    from .harness import census, summary_json

    if not 1 <= args.n <= 7:
        raise InputError("census needs 1 <= n <= 7")
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            summary = census(args.n, args.jobs, fh, args.rule_threshold)
    else:
        summary = census(args.n, args.jobs, rule_threshold=args.rule_threshold)
    print(summary_json(summary))
    return EXIT_OK if summary["violations"] == 0 else EXIT_SOFT


def _n_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO..HI") from None
    if not 1 <= a <= b:
        raise argparse.ArgumentTypeError("need 1 <= LO <= HI")
    return a, b


def cmd_fuzz(args) -> int:
    from .harness import FuzzConfig, fuzz, summary_json

    lo, hi = args.n_range
    cfg = FuzzConfig(n_lo=lo, n_hi=hi, density=args.m_density, count=args.count, seed=args.seed,
                     jobs=args.jobs, out_dir=args.out_dir, jsonl=args.jsonl,
                     metamorphic=not args.no_metamorphic)
    summary = fuzz(cfg)
    print(summary_json(summary))
    return EXIT_OK if not summary["failures"] else EXIT_SOFT


def cmd_analyze(args) -> int:
    from .rules import match_ci_rule
    from .structure import find_configuration
    from .errors import UnmatchedCase

    g = _load_graph(args.input, args.format)
    if not is_connected(g):
        raise InputError("graph not connected")
    if not is_planar(g):
        raise InputError("not planar")
    try:
        wit = find_configuration(g)
    except NotFound as exc:
        _emit({"n": g.n, "m": g.m, "witness": None, "reason": str(exc)})
        return EXIT_SOFT
    doc = {"n": g.n, "m": g.m, "witness": wit.to_dict()}
    if wit.kind == "CI":
        try:
            m = match_ci_rule(g, *wit.ci_pair)
            doc["rule"] = {"rule_id": m.rule_id, "binding": dict(sorted(m.binding.items()))}
        except UnmatchedCase as exc:
            doc["rule"] = None
            doc["unmatched"] = str(exc)
    _emit(doc)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gallai", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=["auto", "edgelist", "graph6"], default="auto")

    d = sub.add_parser("decompose", help="decompose a connected planar graph into paths")
    d.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin")
    d.add_argument("--format", **fmt)
    d.add_argument("--json", action="store_true", help="print one JSON object only")
    d.add_argument("--dot", metavar="FILE", help="write a colored DOT drawing")
    d.add_argument("--exact-threshold", type=int, default=8)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--trace", action="store_true", help="include the rule trace")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a decomposition against its graph")
    v.add_argument("graph")
    v.add_argument("decomposition")
    v.add_argument("--format", **fmt)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="oracle and decompose on every small planar graph")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--jsonl", metavar="FILE", help="per-graph {graph6, min_paths, verdict} lines")
    c.add_argument("--rule-threshold", type=int, metavar="K",
                   help="also decompose with exact search capped at K vertices so rules fire")
    c.set_defaults(func=cmd_census)

    f = sub.add_parser("fuzz", help="random planar graphs through decompose with all checks")
    f.add_argument("--n-range", type=_n_range, default=(8, 12), metavar="LO..HI")
    f.add_argument("--m-density", type=float, default=2.0)
    f.add_argument("--count", type=int, default=100)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--jobs", type=int, default=1)
    f.add_argument("--out-dir", default="fuzz-failures", help="where reproducers are written")
    f.add_argument("--jsonl", metavar="FILE", help="per-instance records")
    f.add_argument("--no-metamorphic", action="store_true")
    f.set_defaults(func=cmd_fuzz)

    a = sub.add_parser("analyze", help="report the reducible configuration found")
    a.add_argument("input", nargs="?", default="-")
    a.add_argument("--format", **fmt)
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ColoringDomainMismatch as exc:
        print(f"error: domain mismatch: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GallaiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOFT


if __name__ == "__main__":
    sys.exit(main())
