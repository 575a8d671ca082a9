"""Recursive-descent parsers for group expressions and graph expressions.

Group grammar (all operators share one precedence level; a chain of mixed
operators must be parenthesised)::

    expr    := term (op term)*          op in {wr, pwr, box}
    term    := primary ['@' INT]        the suffix is only valid on a box
    primary := atom | '(' expr ')'
    atom    := S(n) | A(n) | C(n) | D(2n) | perm[deg; cycles; ...]

Graph grammar::

    gexpr   := gterm ('x' gterm)*
    gterm   := K<n> | C<n> | P<n> | DC<n> | gamma(gexpr, m)['@' INT] | '(' gexpr ')'
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from typing import Union

from ..decompose import DEFAULT_BOX_RADIUS, Atom, Box, GroupExpr, Wr, WrImp, to_text
from ..errors import HypothesisViolation, ParseError
from ..graphalg import (
    cartesian_graph_product,
    complete_graph,
    cycle_graph,
    directed_cycle,
    gamma_graph,
    path_truncation,
)
from ..permcore import Permutation

OPS = {"wr": WrImp, "pwr": Wr, "box": Box}
ATOM_KINDS = ("S", "A", "C", "D")
GRAPH_ATOM = re.compile(r"^(K|P|C|DC)(\d+)$")

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<punct>[()\[\];,@]))")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> tuple[str, str, int]:
        """(kind, value, column) of the next token; kind is 'end' at the end of input."""
        self._skip()
        if self.pos >= len(self.text):
            return "end", "", self.pos
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            raise ParseError(f"unexpected character {self.text[self.pos]!r}", self.pos)
        kind = m.lastgroup
        return kind, m.group(kind), m.start(kind)

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != "end":
            self.pos = tok[2] + len(tok[1])
        return tok

    def expect(self, value: str) -> int:
        kind, got, col = self.next()
        if got != value or kind == "end":
            shown = repr(got) if kind != "end" else "end of input"
            raise ParseError(f"expected {value!r}, found {shown}", col)
        return col

    def integer(self) -> int:
        kind, got, col = self.next()
        if kind != "int":
            raise ParseError("expected an integer", col)
        return int(got)

    def done(self):
        kind, got, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {got!r}", col)


# -- group expressions -----------------------------------------------------------


def parse_expr(text: str, default_radius: int = DEFAULT_BOX_RADIUS) -> GroupExpr:
    """Parse a group expression; boxes without an '@r' suffix get ``default_radius``."""
    if default_radius < 2:
        raise ParseError("box radius must be at least 2")
    sc = _Scanner(text)
    e = _expr(sc, default_radius)
    sc.done()
    return e


def _expr(sc: _Scanner, radius: int) -> GroupExpr:
    left = _term(sc, radius)
    chain_op = None
    while True:
        kind, value, col = sc.peek()
        if kind != "ident" or value not in OPS:
            return left
        if chain_op is not None and value != chain_op:
            raise ParseError("ambiguous chain requires parentheses", col)
        chain_op = value
        sc.next()
        right = _term(sc, radius)
        cls = OPS[value]
        left = cls(left, right, radius) if cls is Box else cls(left, right)


def _term(sc: _Scanner, radius: int) -> GroupExpr:
    e = _primary(sc, radius)
    kind, value, col = sc.peek()
    if value == "@" and kind == "punct":
        sc.next()
        if not isinstance(e, Box):
            raise ParseError("a radius suffix applies only to a box", col)
        r_col = sc.peek()[2]
        r = sc.integer()
        if r < 2:
            raise ParseError("box radius must be at least 2", r_col)
        e = dataclasses.replace(e, radius=r)
    return e


def _primary(sc: _Scanner, radius: int) -> GroupExpr:
    kind, value, col = sc.peek()
    if kind == "punct" and value == "(":
        sc.next()
        e = _expr(sc, radius)
        sc.expect(")")
        return e
    if kind != "ident":
        raise ParseError("expected an atom or '('", col)
    sc.next()
    if value == "perm":
        return _perm_atom(sc, col)
    if value not in ATOM_KINDS:
        raise ParseError(f"unknown atom {value!r}", col)
    sc.expect("(")
    n_col = sc.peek()[2]
    n = sc.integer()
    sc.expect(")")
    try:
        return Atom(value, n)
    except ValueError as exc:
        raise ParseError(str(exc), n_col) from None


def _perm_atom(sc: _Scanner, col: int) -> Atom:
    sc.expect("[")
    degree = sc.integer()
    end = sc.text.find("]", sc.pos)
    if end < 0:
        raise ParseError("unterminated perm[...]", col)
    body = sc.text[sc.pos : end]
    if body.strip() and not body.lstrip().startswith(";"):
        raise ParseError("expected ';' after the degree", sc.pos)
    gens = []
    offset = sc.pos
    for chunk in body.split(";"):
        if chunk.strip():
            try:
                g = Permutation.parse(chunk, degree)
            except ValueError as exc:
                raise ParseError(str(exc), offset + len(chunk) - len(chunk.lstrip())) from None
            gens.append(g)
        offset += len(chunk) + 1
    sc.pos = end + 1
    try:
        return Atom.perm(degree, gens)
    except ValueError as exc:
        raise ParseError(str(exc), col) from None


def print_expr(e: GroupExpr) -> str:
    return to_text(e)


# -- graph expressions -----------------------------------------------------------


@dataclass(frozen=True)
class GraphAtom:
    kind: str  # K, C, P or DC
    n: int


@dataclass(frozen=True)
class Gamma:
    base: GraphExpr
    m: int
    radius: int


@dataclass(frozen=True)
class Product:
    factors: tuple


GraphExpr = Union[GraphAtom, Gamma, Product]


def is_graph_expr(text: str) -> bool:
    """Graph expressions start (after any parentheses) with 'gamma' or K<n>, C<n>, P<n>, DC<n>."""
    m = re.match(r"[\s(]*([A-Za-z_]\w*)", text)
    return bool(m) and (m.group(1) == "gamma" or bool(GRAPH_ATOM.match(m.group(1))))


def parse_graph_expr(text: str, default_radius: int = DEFAULT_BOX_RADIUS) -> GraphExpr:
    sc = _Scanner(text)
    g = _gexpr(sc, default_radius)
    sc.done()
    return g


def _gexpr(sc: _Scanner, radius: int) -> GraphExpr:
    factors = [_gterm(sc, radius)]
    while sc.peek()[:2] == ("ident", "x"):
        sc.next()
        factors.append(_gterm(sc, radius))
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def _gterm(sc: _Scanner, radius: int) -> GraphExpr:
    kind, value, col = sc.next()
    if kind == "punct" and value == "(":
        g = _gexpr(sc, radius)
        sc.expect(")")
        return g
    if kind != "ident":
        raise ParseError("expected a graph", col)
    if value == "gamma":
        sc.expect("(")
        base = _gexpr(sc, radius)
        sc.expect(",")
        m = sc.integer()
        sc.expect(")")
        r = radius
        if sc.peek()[:2] == ("punct", "@"):
            sc.next()
            r = sc.integer()
        return Gamma(base, m, r)
    m = GRAPH_ATOM.match(value)
    if not m:
        raise ParseError(f"unknown graph {value!r}", col)
    return GraphAtom(m.group(1), int(m.group(2)))


def graph_to_text(g: GraphExpr) -> str:
    if isinstance(g, GraphAtom):
        return f"{g.kind}{g.n}"
    if isinstance(g, Gamma):
        return f"gamma({graph_to_text(g.base)}, {g.m})@{g.radius}"
    return " x ".join(
        f"({graph_to_text(f)})" if isinstance(f, Product) else graph_to_text(f) for f in g.factors
    )


def build_graph(g: GraphExpr):
    if isinstance(g, GraphAtom):
        if g.kind == "K":
            return complete_graph(g.n)
        if g.kind == "C":
            return cycle_graph(g.n)
        if g.kind == "DC":
            return directed_cycle(g.n)
        return path_truncation(g.n)
    if isinstance(g, Gamma):
        return gamma_graph(build_graph(g.base), g.m, g.radius)
    out = None
    for f in g.factors:
        h = build_graph(f)
        if h.directed:
            raise HypothesisViolation("cartesian products are taken of undirected graphs")
        out = h if out is None else cartesian_graph_product(out, h)
    return out
