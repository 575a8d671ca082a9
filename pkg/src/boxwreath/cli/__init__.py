from .commands import Command, build_arg_parser, main, run
from .parser import (
    Gamma,
    GraphAtom,
    Product,
    build_graph,
    graph_to_text,
    is_graph_expr,
    parse_expr,
    parse_graph_expr,
    print_expr,
)

__all__ = [
    "Command",
    "Gamma",
    "GraphAtom",
    "Product",
    "build_arg_parser",
    "build_graph",
    "graph_to_text",
    "is_graph_expr",
    "main",
    "parse_expr",
    "parse_graph_expr",
    "print_expr",
    "run",
]
