from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import norm


@dataclass(frozen=True)
class Edit:
    """One reduction edit: add or remove edge ab. ``via`` is the deleted
    section the added edge stands for (a, ..., b), when there is one."""

    kind: str
    edge: tuple
    via: tuple = ()

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "edge": list(self.edge)}
        if self.via:
            d["via"] = list(self.via)
        return d


def add_edit(a: int, b: int, via=()) -> Edit:
    e = norm(a, b)
    via = tuple(via)
    if via and via[0] != e[0]:
        via = via[::-1]
    return Edit("add", e, via)


@dataclass
class RuleMatch:
    rule_id: str
    binding: dict
    special: tuple
    path: tuple | None = None
    subdivision: object | None = None
    transcript: list = field(default_factory=list)
    edits: tuple = ()
    constraints: dict = field(default_factory=dict)

    @property
    def family(self) -> str:
        return "CII" if self.subdivision is not None else "CI"

    def with_edits(self, edits) -> "RuleMatch":
        return RuleMatch(self.rule_id, dict(self.binding), self.special, self.path,
                         self.subdivision, list(self.transcript), tuple(edits),
                         dict(self.constraints))

    def to_dict(self) -> dict:
        d = {"rule_id": self.rule_id,
             "binding": {k: v for k, v in sorted(self.binding.items())},
             "special": list(self.special),
             "transcript": list(self.transcript)}
        if self.path is not None:
            d["path"] = list(self.path)
        if self.edits:
            d["edits"] = [e.to_dict() for e in self.edits]
        if self.constraints:
            d["constraints"] = {k: [list(x) for x in v] for k, v in self.constraints.items()}
        return d
