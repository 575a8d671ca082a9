"""DOT export with stable names: p<i> for points, L<j> for lobes."""

from __future__ import annotations

from .lobes import AnyGraph, ConnOneDecomposition


def graph_to_dot(g: AnyGraph, name: str = "G") -> str:
    kind, link = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    for v in range(g.n):
        attrs = ' [style="dashed"]' if v in g.boundary else ""
        lines.append(f"  p{v}{attrs};")
    pairs = g.arcs() if g.directed else g.edges
    for a, b in pairs:
        lines.append(f"  p{a} {link} p{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bcv_to_dot(dec: ConnOneDecomposition, name: str = "BCV") -> str:
    lines = [f"graph {name} {{"]
    for v in range(dec.n):
        lines.append(f"  p{v} [shape=circle];")
    for j in range(len(dec.lobes)):
        lines.append(f"  L{j} [shape=box];")
    for j, lobe in enumerate(dec.lobes):
        for v in lobe:
            lines.append(f"  p{v} -- L{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
