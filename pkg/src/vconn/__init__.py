"""Deterministic vertex connectivity for small c via terminal sparsification."""

from .graph import Graph, SeparatorResult, VertexCut
from .io import GraphFormatError, format_graph, parse_graph, parse_graph_text
from .pipeline import MainConfig, main, vertex_sparsify

__all__ = [
    "Graph",
    "GraphFormatError",
    "MainConfig",
    "SeparatorResult",
    "VertexCut",
    "format_graph",
    "main",
    "parse_graph",
    "parse_graph_text",
    "vertex_sparsify",
]
