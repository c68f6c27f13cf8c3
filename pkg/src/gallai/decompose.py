"""The decomposition driver: exact search on small graphs, otherwise reduce by a
rule, solve the reduced graph component by component and recolor."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import asdict, dataclass, field

from . import _oracle_py
from .coloring import EdgeColoring, expected_relaxed, good_budget, verify_good_coloring, verify_path_coloring
from .errors import (GuardFailure, InducedK4Violation, NotFound, PlanarityLost,
                     PreconditionViolated, RecoloringInvalid, SearchBudgetExceeded, Timeout,
                     Unsatisfiable, UnmatchedCase)
from .graph import Graph, is_connected, is_planar, norm
from .oracle import min_path_decomposition
from .rules import (RecolorInfo, apply_rule, edit_candidates, match_ci_rule, rule,
                    safety_recolor, select_cii_composite)
from .rules.engine import DEFAULT_EDIT_SETS, DEFAULT_SEARCH_NODES
from .structure import find_configuration
from .subdivision import classify_problems, find_k_subdivision, redirect


@dataclass
class DecomposeOptions:
    exact_threshold: int = 8
    seed: int = 0
    search_nodes: int = DEFAULT_SEARCH_NODES
    total_search_nodes: int = 40 * DEFAULT_SEARCH_NODES
    oracle_budget: int | None = None
    fallback_oracle_edges: int = 30
    fallback_oracle_budget: int = 2_000_000
    max_pairs: int = 6
    max_edit_sets: int = DEFAULT_EDIT_SETS
    check: bool = True
    # planarity of the input is re-tested unless the caller vouches for it
    check_input: bool = True

    def __post_init__(self):
        env = os.environ.get("GALLAI_NODE_BUDGET")
        if env:
            self.search_nodes = int(env)
            self.total_search_nodes = 40 * int(env)


@dataclass
class Firing:
    rule_id: str
    family: str
    n: int
    binding: dict
    removed: int
    edits: list
    budget_before: int
    budget_after: int
    new_colors: int
    allowance: int
    mode: str
    nodes: int = 0
    fallback: str | None = None


@dataclass
class Trace:
    firings: list = field(default_factory=list)
    fallbacks: list = field(default_factory=list)
    unmatched: list = field(default_factory=list)
    failed_attempts: int = 0
    violations: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    meets_bound: bool = True
    relaxed: bool = False
    color_count: int = 0
    bound: int = 0

    def rule_counts(self) -> dict:
        out: dict = {}
        for f in self.firings:
            out[f.rule_id] = out.get(f.rule_id, 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["firings"] = [{k: v for k, v in asdict(f).items()} for f in self.firings]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class DecomposeResult:
    coloring: EdgeColoring
    trace: Trace

    @property
    def meets_bound(self) -> bool:
        return self.trace.meets_bound

    def __iter__(self):
        return iter((self.coloring, self.trace))


def _lift(c: EdgeColoring, old: list) -> dict:
    return {norm(old[a], old[b]): col for (a, b), col in c.color_of.items()}


class _Solver:
    def __init__(self, opts: DecomposeOptions, trace: Trace):
        self.opts = opts
        self.trace = trace
        self.memo: dict = {}
        self.spent = 0

    # -- entry for a connected graph with dense ids
    def solve(self, g: Graph) -> EdgeColoring:
        key = (g.n, g.edges)
        if key in self.memo:
            return self.memo[key]
        if g.m == 0:
            out = EdgeColoring({})
        elif g.n <= self.opts.exact_threshold:
            out = self._exact(g, self.opts.oracle_budget, "exact")
        else:
            out = self._reduce(g)
        self.memo[key] = out
        return out

    def _exact(self, g: Graph, budget, label) -> EdgeColoring:
        try:
            return min_path_decomposition(g, budget).witness
        except Timeout as exc:
            self.trace.diagnostics.append(f"{label}: oracle budget exhausted on n={g.n} m={g.m}")
            return exc.best.witness

    def _matches(self, g: Graph):
        try:
            wit = find_configuration(g)
        except NotFound as exc:
            self.trace.diagnostics.append(f"no configuration on n={g.n}: {exc}")
            return
        if wit.kind == "CI":
            low = [v for v in range(g.n) if g.degree(v) <= 4]
            pairs = [tuple(wit.ci_pair)]
            pairs += [p for p in itertools.combinations(low, 2) if p != pairs[0]]
            for u1, u2 in pairs[: self.opts.max_pairs]:
                try:
                    yield match_ci_rule(g, u1, u2)
                except UnmatchedCase as exc:
                    self.trace.unmatched.append({"n": g.n, "pair": [u1, u2], "reason": str(exc),
                                                 "transcript": exc.transcript})
            return
        U = wit.four_family
        try:
            s = find_k_subdivision(g, U)
            s = redirect(g, s)
            report = classify_problems(g, s)
            yield select_cii_composite(g, U, s, report)
        except UnmatchedCase as exc:
            self.trace.unmatched.append({"n": g.n, "family": list(U), "reason": str(exc),
                                         "transcript": exc.transcript})
        except (NotFound, SearchBudgetExceeded, GuardFailure, InducedK4Violation) as exc:
            self.trace.diagnostics.append(f"subdivision stage on n={g.n}: {type(exc).__name__}: {exc}")

    def _reduce(self, g: Graph) -> EdgeColoring:
        for m in self._matches(g):
            r = rule(m.rule_id)
            for edits in edit_candidates(g, m, self.opts.max_edit_sets):
                if self.spent >= self.opts.total_search_nodes:
                    self.trace.diagnostics.append(f"search allowance spent at n={g.n}")
                    return self._fallback(g)
                mm = m.with_edits(edits)
                try:
                    reduced, undo = apply_rule(g, mm)
                except (PlanarityLost, PreconditionViolated) as exc:
                    self.trace.diagnostics.append(f"{m.rule_id}: {exc}")
                    continue
                info = RecolorInfo()
                try:
                    c = safety_recolor(g, mm, reduced, solve=self.solve, undo=undo,
                                       node_cap=self.opts.search_nodes, info=info)
                except (Unsatisfiable, RecoloringInvalid) as exc:
                    self.spent += info.nodes
                    self.trace.failed_attempts += 1
                    if isinstance(exc, RecoloringInvalid):
                        self.trace.diagnostics.append(f"{m.rule_id}: {exc}")
                    continue
                self.spent += info.nodes
                removed = len(mm.special)
                allowance = removed // 2
                problems = self._contract(g, reduced, c, info, removed, r)
                if problems:
                    self.trace.violations.append({"rule_id": m.rule_id, "n": g.n,
                                                  "problems": problems})
                    continue
                self.trace.firings.append(Firing(
                    rule_id=m.rule_id, family=mm.family, n=g.n,
                    binding={k: v for k, v in sorted(mm.binding.items())},
                    removed=removed, edits=[e.to_dict() for e in edits],
                    budget_before=info.pc_count, budget_after=c.count,
                    new_colors=c.count - info.pc_count, allowance=allowance, mode=info.mode,
                    nodes=info.nodes))
                return c
        return self._fallback(g)

    def _contract(self, g, reduced, c, info, removed, r) -> list:
        out = []
        if removed < 1 or removed != r.removed_count:
            out.append(f"vertex count drop {removed}")
        if self.opts.check and not is_planar(reduced):
            out.append("reduced graph not planar")
        rep = verify_path_coloring(g, c)
        if not rep.ok:
            out.append(f"not a path coloring: {rep.violations[:2]}")
        if c.count - info.pc_count > removed // 2:
            out.append(f"{c.count - info.pc_count} new colors for {removed} removed vertices")
        return out

    def _fallback(self, g: Graph) -> EdgeColoring:
        if g.m <= self.opts.fallback_oracle_edges:
            self.trace.fallbacks.append({"n": g.n, "m": g.m, "via": "oracle"})
            return self._exact(g, self.opts.fallback_oracle_budget, "fallback")
        self.trace.fallbacks.append({"n": g.n, "m": g.m, "via": "greedy"})
        edges = g.sorted_edges()
        masks = _oracle_py.greedy_cover(g.n, edges)
        col = {}
        for i, mask in enumerate(masks):
            for k, e in enumerate(edges):
                if mask >> k & 1:
                    col[e] = i
        out = EdgeColoring(col)
        if not verify_path_coloring(g, out).ok:
            out = EdgeColoring({e: i for i, e in enumerate(edges)})
        return out


def decompose(g: Graph, options: DecomposeOptions | None = None) -> DecomposeResult:
    """Path decomposition of a connected planar graph, aiming at floor(n/2)
    paths (ceil for K3 and K5-). Never fails: if no rule applies the trace
    records the fallback and ``meets_bound`` tells whether the bound held."""
    opts = options or DecomposeOptions()
    if not is_connected(g):
        raise PreconditionViolated("graph not connected")
    if opts.check_input and not is_planar(g):
        raise PreconditionViolated("not planar")
    trace = Trace()
    solver = _Solver(opts, trace)
    c = solver.solve(g).normalized()
    relaxed = expected_relaxed(g)
    rep = verify_good_coloring(g, c, relaxed_budget=relaxed)
    if any(kind != "budget" for kind, _ in rep.violations):
        raise RecoloringInvalid("decompose", rep.violations[:3])
    trace.meets_bound = rep.ok
    trace.relaxed = relaxed
    trace.color_count = c.count
    trace.bound = good_budget(g, relaxed)
    return DecomposeResult(c, trace)
