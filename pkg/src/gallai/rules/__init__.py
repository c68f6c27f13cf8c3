"""Reduction rules: catalog, case trees, reduction and recoloring."""

from .catalog import RecoloringProgram, Rule, Step, load_catalog, rule, rule_ids
from .ci import match_ci_rule
from .cii import select_cii_composite
from .engine import (Reduction, RecolorInfo, apply_rule, edit_candidates, recolor,
                     safety_recolor)
from .model import Edit, RuleMatch

__all__ = [
    "Edit", "RecoloringProgram", "RecolorInfo", "Reduction", "Rule", "RuleMatch", "Step",
    "apply_rule", "edit_candidates", "load_catalog", "match_ci_rule", "recolor", "rule",
    "rule_ids", "safety_recolor", "select_cii_composite",
]
