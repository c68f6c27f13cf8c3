"""Path decompositions of connected planar graphs within ⌊n/2⌋ paths."""

from __future__ import annotations

from .coloring import EdgeColoring, coloring_from_json, verify_good_coloring, verify_path_coloring
from .decompose import DecomposeOptions, DecomposeResult, Trace, decompose
from .graph import Graph, is_planar, parse_graph, to_graph6
from .merge import merge_cycle_path
from .oracle import gallai_check, min_path_decomposition
from .structure import find_configuration

__all__ = ["DecomposeOptions", "DecomposeResult", "EdgeColoring", "Graph", "Trace",
           "coloring_from_json", "decompose", "find_configuration", "gallai_check", "is_planar",
           "merge_cycle_path", "min_path_decomposition", "parse_graph", "to_graph6",
           "verify_good_coloring", "verify_path_coloring"]
__version__ = "0.1.0"
