"""Command-line verbs: build the subject from an expression, run one analysis, emit JSON or DOT."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from ..decompose import (
    DEFAULT_BOX_RADIUS,
    classify,
    expr_graph,
    primitivity_report,
    realize,
    sd_chain,
    to_text,
)
from ..errors import CapExceeded, HypothesisViolation, ParseError, SdUndefined
from ..graphalg import (
    bcv_to_dot,
    conn_one_primitivity_check,
    connectivity_small,
    ends_estimate,
    graph_to_dot,
    lobes_and_bcv_tree,
)
from ..permcore import min_subdegree, suborbits
from ..products.wreath import PRODUCT_ACTION_CAP
from ..treebox import box_point_action, local_action_verify
from .parser import build_graph, graph_to_text, is_graph_expr, parse_expr, parse_graph_expr

SCHEMA = "boxwreath.analysis"
SCHEMA_VERSION = 1
VERBS = ("analyze", "suborbits", "primitivity", "ends", "decompose", "localaction", "render")
DEFAULT_ORDER_CAP = 10**12

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_HYPOTHESIS = 4


@dataclass
class Command:
    verb: str
    expression: str
    radius: int = DEFAULT_BOX_RADIUS
    cap_degree: int = PRODUCT_ACTION_CAP
    cap_order: int = DEFAULT_ORDER_CAP
    seed: Optional[int] = None
    fmt: Optional[str] = None
    out: Optional[str] = None
    bcv: bool = False
    vertex: Optional[int] = None

    @property
    def output_format(self) -> str:
        return self.fmt or ("dot" if self.verb == "render" else "json")

    def options(self) -> dict:
        return {
            "radius": self.radius,
            "cap_degree": self.cap_degree,
            "cap_order": self.cap_order,
            "seed": self.seed,
            "bcv": self.bcv,
            "vertex": self.vertex,
        }


@dataclass
class Subject:
    """What an expression denotes: a group (with its realisation) or a graph."""

    canonical: str
    expr: object = None
    realization: object = None
    graph: object = None
    extra: dict = field(default_factory=dict)

    @property
    def is_graph(self) -> bool:
        return self.graph is not None and self.realization is None


def load_subject(cmd: Command) -> Subject:
    if cmd.radius < 2:
        raise ParseError("--radius must be at least 2")
    if is_graph_expr(cmd.expression):
        g = parse_graph_expr(cmd.expression, cmd.radius)
        return Subject(graph_to_text(g), expr=g, graph=build_graph(g))
    e = parse_expr(cmd.expression, cmd.radius)
    return Subject(to_text(e), expr=e, realization=realize(e, cmd.cap_degree, cmd.seed))


def _graph_of(cmd: Command, s: Subject):
    if s.graph is None:
        s.graph = expr_graph(s.realization, cmd.cap_degree)
    return s.graph


def _order(order: int, cap: int) -> dict:
    return {"order": order if order <= cap else None, "order_capped": order > cap}


def _sd_chain_or_none(cmd: Command, s: Subject) -> Optional[dict]:
    try:
        return sd_chain(s.expr, cmd.cap_degree).as_dict()
    except SdUndefined:
        return None


def _finite_suborbit_table(G) -> dict:
    if not G.is_transitive():
        return {"transitive": False, "orbits": [list(o) for o in G.orbits()]}
    rep = suborbits(G, 0)
    table = sorted((sorted(o) for o in rep.suborbits), key=lambda o: (len(o), o))
    return {
        "transitive": True,
        "point": 0,
        "suborbits": table,
        "subdegrees": sorted(len(o) for o in table),
        "sd": min_subdegree(G) if len(table) > 1 else None,
    }


def _box_suborbit_table(B) -> dict:
    action = box_point_action(B)
    subs = action.suborbits()
    return {
        "transitive": action.is_transitive(),
        "point": 0,
        "points": list(action.points),
        "suborbits": subs,
        "subdegrees": action.subdegrees(),
        "sd": action.sd(),
        "shortcut_sizes": [action.shortcut_size(o[0]) for o in subs],
    }


def _graph_summary(g) -> dict:
    s = g.symmetrized()
    out = {
        "directed": g.directed,
        "vertices": g.n,
        "edges": len(g.arcs()) if g.directed else len(g.edges),
        "boundary": sorted(g.boundary),
        "connectivity": connectivity_small(g),
    }
    if s.is_connected():
        dec = lobes_and_bcv_tree(g)
        out["lobes"] = len(dec.lobes)
        out["cut_vertices"] = len(dec.cut_vertices)
    return out


# -- verbs -----------------------------------------------------------------------


def do_analyze(cmd: Command, s: Subject) -> dict:
    if s.is_graph:
        g = s.graph
        out = _graph_summary(g)
        out["ends"] = ends_estimate(g).as_dict()
        if g.lobes is not None:
            out["conn_one"] = conn_one_primitivity_check(g).as_dict()
        return out
    R = s.realization
    out = {"kind": R.kind}
    if R.finite:
        G = R.group
        out["degree"] = G.degree
        out.update(_order(G.order(), cmd.cap_order))
        out.update(_finite_suborbit_table(G))
    elif R.kind == "box":
        B = R.truncation
        table = _box_suborbit_table(B)
        out["degree"] = len(table["points"])
        out["truncation_radius"] = B.radius
        out["stabilizer"] = _order(B.order(), cmd.cap_order)
        table.pop("points")
        out.update(table)
    else:
        out["degree"] = None
        out["reason"] = R.reason or None
    out["primitivity"] = primitivity_report(s.expr, cmd.cap_degree).as_dict()
    out["sd_chain"] = _sd_chain_or_none(cmd, s)
    out["verdict"] = classify(s.expr, cmd.cap_degree, cmd.seed).verdict
    return out


def do_suborbits(cmd: Command, s: Subject) -> dict:
    if s.is_graph:
        raise HypothesisViolation("suborbits need a group expression")
    R = s.realization
    if R.finite:
        return _finite_suborbit_table(R.group)
    if R.kind == "box":
        return _box_suborbit_table(R.truncation)
    raise HypothesisViolation(f"no finite suborbit table for a {R.kind} expression")


def do_primitivity(cmd: Command, s: Subject) -> dict:
    if s.is_graph:
        if s.graph.lobes is None:
            raise HypothesisViolation("primitivity of a graph is read from its lobe registry; use gamma(...)")
        return conn_one_primitivity_check(s.graph).as_dict()
    return primitivity_report(s.expr, cmd.cap_degree).as_dict()


def do_ends(cmd: Command, s: Subject) -> dict:
    g = _graph_of(cmd, s)
    out = ends_estimate(g).as_dict()
    out["graph"] = {"vertices": g.n, "boundary": len(g.boundary)}
    return out


def do_decompose(cmd: Command, s: Subject) -> dict:
    if s.is_graph:
        dec = lobes_and_bcv_tree(s.graph)
        return {
            "lobes": [list(l) for l in dec.lobes],
            "cut_vertices": list(dec.cut_vertices),
            "bcv_tree": {"nodes": dec.bcv_tree.n, "edges": [list(e) for e in dec.bcv_tree.edges]},
            "valid": dec.check(s.graph),
        }
    report = classify(s.expr, cmd.cap_degree, cmd.seed).as_dict()
    for key in ("schema", "version", "input"):
        report.pop(key)
    return report


def do_localaction(cmd: Command, s: Subject) -> dict:
    if s.is_graph or s.realization.kind != "box":
        raise HypothesisViolation("local actions are read from a box expression")
    B = s.realization.truncation
    sites = [cmd.vertex] if cmd.vertex is not None else B.ball.interior()
    rows = []
    for v in sites:
        rep = local_action_verify(B, v)
        rows.append(
            {
                "site": rep.site,
                "side": rep.side,
                "order": rep.induced.order(),
                "expected_order": rep.expected.order(),
                "equal": rep.equal,
                "isomorphic": rep.isomorphic,
            }
        )
    return {
        "truncation_radius": B.radius,
        "sites": rows,
        "locally_prescribed": all(r["equal"] for r in rows),
    }


def render_dot(cmd: Command, s: Subject) -> str:
    g = _graph_of(cmd, s)
    if cmd.bcv:
        return bcv_to_dot(lobes_and_bcv_tree(g))
    return graph_to_dot(g)


def do_render(cmd: Command, s: Subject) -> dict:
    g = _graph_of(cmd, s)
    if cmd.bcv:
        dec = lobes_and_bcv_tree(g)
        return {"nodes": dec.bcv_tree.n, "edges": [list(e) for e in dec.bcv_tree.edges]}
    out = {"vertices": g.n, "directed": g.directed, "boundary": sorted(g.boundary)}
    out["arcs" if g.directed else "edges"] = [list(e) for e in (g.arcs() if g.directed else g.edges)]
    if g.lobes is not None:
        out["lobes"] = [list(l) for l in g.lobes]
    return out


DISPATCH = {
    "analyze": do_analyze,
    "suborbits": do_suborbits,
    "primitivity": do_primitivity,
    "ends": do_ends,
    "decompose": do_decompose,
    "localaction": do_localaction,
    "render": do_render,
}


def run(cmd: Command) -> str:
    """The output text for one command: a JSON document, or DOT when the format is dot."""
    if cmd.verb not in DISPATCH:
        raise ValueError(f"unknown verb {cmd.verb!r}")
    s = load_subject(cmd)
    if cmd.output_format == "dot":
        return render_dot(cmd, s)
    doc = {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "command": cmd.verb,
        "input": cmd.expression,
        "canonical": s.canonical,
        "options": cmd.options(),
        "result": DISPATCH[cmd.verb](cmd, s),
    }
    return json.dumps(doc, indent=2) + "\n"


# -- argument parsing --------------------------------------------------------------

EXPRESSION_HELP = """\
group expressions: S(n) A(n) C(n) D(2n) perm[deg; (0 1 2); ...] joined by
  'pwr' (product action), 'wr' (imprimitive) or 'box'; '(G box F)@r' sets the
  truncation radius. Mixed operator chains need parentheses.
graph expressions: K<n> C<n> P<n> DC<n>, 'A x B' (cartesian product) and
  gamma(L, m)@r (every vertex in m copies of L).
radius: tree-edge distance from the centre of the truncation; one step between
  points is two tree steps.
exit codes: 0 success, 2 parse error, 3 cap exceeded, 4 hypothesis violation.
"""


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="boxwreath",
        description="Analyse wreath products, box products and their graphs at finite scale.",
        epilog=EXPRESSION_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb in VERBS:
        sp = sub.add_parser(verb, epilog=EXPRESSION_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.add_argument("expression")
        sp.add_argument("--radius", type=int, default=DEFAULT_BOX_RADIUS, help="default box / gamma radius")
        sp.add_argument("--cap-degree", type=int, default=PRODUCT_ACTION_CAP, help="largest realised degree")
        sp.add_argument(
            "--cap-order", type=int, default=DEFAULT_ORDER_CAP, help="orders above this are reported as null"
        )
        sp.add_argument("--seed", type=int, default=None, help="use a seeded random legal colouring for boxes")
        sp.add_argument("--format", dest="fmt", choices=("json", "dot"), default=None)
        sp.add_argument("--out", default=None, metavar="PATH")
        sp.add_argument("--bcv", action="store_true", help="render the block-cut-vertex tree")
        if verb == "localaction":
            sp.add_argument("--vertex", type=int, default=None, help="one ball vertex instead of all interior ones")
    return p


def command_from_args(ns: argparse.Namespace) -> Command:
    return Command(
        verb=ns.verb,
        expression=ns.expression,
        radius=ns.radius,
        cap_degree=ns.cap_degree,
        cap_order=ns.cap_order,
        seed=ns.seed,
        fmt=ns.fmt,
        out=ns.out,
        bcv=ns.bcv,
        vertex=getattr(ns, "vertex", None),
    )


def main(argv=None) -> int:
    ns = build_arg_parser().parse_args(argv)
    cmd = command_from_args(ns)
    try:
        text = run(cmd)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (HypothesisViolation, ValueError) as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    if cmd.out:
        with open(cmd.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK
