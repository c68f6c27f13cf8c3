"""Loading the declarative rule catalog."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources

import yaml

STEP_OPS = ("AssignNewColor", "Deviate", "Extend", "SplitColor", "RecolorEdge",
            "TwoColor", "Search")
EDIT_KINDS = ("pair", "bridge", "cross", "fold")


@dataclass(frozen=True)
class Step:
    op: str
    args: dict = field(default_factory=dict, hash=False, compare=False)


@dataclass(frozen=True)
class RecoloringProgram:
    steps: tuple = ()

    def roles(self) -> set:
        """Role names the explicit steps refer to."""
        out = set()

        def walk(x):
            if isinstance(x, str):
                out.add(x)
            elif isinstance(x, dict):
                for k, v in x.items():
                    if k in ("edge", "ends", "section", "edges"):
                        walk(v)
            elif isinstance(x, (list, tuple)):
                for y in x:
                    walk(y)

        for s in self.steps:
            walk({k: v for k, v in s.args.items() if k != "color"})
            if isinstance(s.args.get("color"), dict):
                walk(s.args["color"])
        out.discard("path")
        out.discard("distant")
        return out


@dataclass(frozen=True)
class Rule:
    id: str
    family: str
    node: str
    matcher: tuple
    remove: tuple
    remove_path: bool
    remove_subdivision: bool
    add: tuple
    edits: tuple
    budget: int
    program: RecoloringProgram

    @property
    def removed_count(self) -> int:
        return len(self.remove)


def _rule(rec: dict) -> Rule:
    red = rec.get("reduction", {})
    steps = []
    for st in rec.get("recoloring", []):
        st = dict(st)
        op = st.pop("op")
        if op not in STEP_OPS:
            raise ValueError(f"rule {rec['id']}: unknown step {op}")
        steps.append(Step(op, st))
    edits = tuple(red.get("edits", ()))
    for e in edits:
        if e not in EDIT_KINDS:
            raise ValueError(f"rule {rec['id']}: unknown edit family {e}")
    rule = Rule(
        id=str(rec["id"]),
        family=rec["family"],
        node=str(rec.get("node", "")),
        matcher=tuple(rec.get("matcher", ())),
        remove=tuple(red.get("remove", ())),
        remove_path=bool(red.get("remove_path", False)),
        remove_subdivision=bool(red.get("remove_subdivision", False)),
        add=tuple(tuple(e) for e in red.get("add", ())),
        edits=edits,
        budget=int(rec["budget"]),
        program=RecoloringProgram(tuple(steps)),
    )
    if rule.budget > rule.removed_count // 2:
        raise ValueError(f"rule {rule.id}: budget {rule.budget} exceeds half the removed vertices")
    return rule


@functools.lru_cache(maxsize=1)
def load_catalog() -> dict[str, Rule]:
    text = resources.files(__package__).joinpath("catalog.yaml").read_text(encoding="utf-8")
    data = yaml.safe_load(text)
    out: dict[str, Rule] = {}
    for rec in data["rules"]:
        r = _rule(rec)
        if r.id in out:
            raise ValueError(f"duplicate rule id {r.id}")
        out[r.id] = r
    return out


def rule(rule_id: str) -> Rule:
    return load_catalog()[rule_id]


def rule_ids(family: str | None = None) -> list[str]:
    return [r.id for r in load_catalog().values() if family is None or r.family == family]
