"""Finite balls in the (d1, d2)-biregular tree and legal arc colourings on them.

Vertices are numbered breadth-first from the root. Side 1 vertices have valency
d1 and side 2 vertices valency d2. A vertex is interior when its whole
neighbourhood lies in the ball, i.e. its depth is below the radius.

A legal colouring is stored as a vertex label ``kappa``: every arc u -> v carries
colour kappa[v]. In-arcs of a vertex are then constant by construction, and the
out-arc condition becomes "the neighbours of u carry distinct labels from
X_{side(u)} = range(d_{side(u)})".
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..errors import CapExceeded, HypothesisViolation

BALL_VERTEX_CAP = 100_000
SCHEMA = "boxwreath.treeball"
SCHEMA_VERSION = 1


def other(side: int) -> int:
    return 3 - side


@dataclass
class TreeBall:
    d1: int
    d2: int
    radius: int
    root_side: int
    side: list[int] = field(default_factory=list)
    depth: list[int] = field(default_factory=list)
    parent: list[int] = field(default_factory=list)
    children: list[list[int]] = field(default_factory=list)
    host: Optional[list[int]] = None  # vertex ids in the ball this one was cut from

    @property
    def size(self) -> int:
        return len(self.side)

    def valency(self, side: int) -> int:
        return self.d1 if side == 1 else self.d2

    def degree_of(self, v: int) -> int:
        return self.valency(self.side[v])

    def neighbours(self, v: int) -> list[int]:
        p = self.parent[v]
        return ([p] if p >= 0 else []) + self.children[v]

    def is_interior(self, v: int) -> bool:
        return self.depth[v] < self.radius

    def interior(self) -> list[int]:
        return [v for v in range(self.size) if self.is_interior(v)]

    def vertices_on_side(self, side: int) -> list[int]:
        return [v for v in range(self.size) if self.side[v] == side]

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.size):
            for w in self.neighbours(v):
                out.append((v, w))
        return sorted(out)

    def distance(self, u: int, v: int) -> int:
        du, dv = self.depth[u], self.depth[v]
        steps = 0
        while du > dv:
            u, du, steps = self.parent[u], du - 1, steps + 1
        while dv > du:
            v, dv, steps = self.parent[v], dv - 1, steps + 1
        while u != v:
            u, v, steps = self.parent[u], self.parent[v], steps + 2
        return steps

    def is_ancestor(self, a: int, v: int) -> bool:
        """a lies on the path from the root to v (a == v allowed)."""
        while self.depth[v] > self.depth[a]:
            v = self.parent[v]
        return v == a

    def check_shape(self) -> None:
        """Bipartite by side, full valency at interior vertices, tree by construction."""
        for v in range(self.size):
            for w in self.neighbours(v):
                if self.side[w] == self.side[v]:
                    raise AssertionError("adjacent vertices on the same side")
            if self.is_interior(v) and len(self.neighbours(v)) != self.degree_of(v):
                raise AssertionError(f"interior vertex {v} has the wrong valency")

    def sub_ball(self, center: int, radius: int) -> TreeBall:
        """The ball of the given radius around ``center``, renumbered breadth-first from it."""
        sub = TreeBall(self.d1, self.d2, radius, self.side[center])
        sub.host = []
        queue = [(center, -1, -1)]
        for old, old_parent, new_parent in queue:
            new = sub.size
            sub.side.append(self.side[old])
            d = 0 if new_parent < 0 else sub.depth[new_parent] + 1
            sub.depth.append(d)
            sub.parent.append(new_parent)
            sub.children.append([])
            sub.host.append(old)
            if new_parent >= 0:
                sub.children[new_parent].append(new)
            if d < radius:
                if not self.is_interior(old):
                    raise HypothesisViolation("sub-ball reaches past the boundary of the host ball")
                for w in self.neighbours(old):
                    if w != old_parent:
                        queue.append((w, old, new))
        return sub


def build_ball(d1: int, d2: int, radius: int, root_side: int = 2, cap: int = BALL_VERTEX_CAP) -> TreeBall:
    if d1 < 2 or d2 < 2:
        raise ValueError("biregular tree needs both valencies >= 2")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if root_side not in (1, 2):
        raise ValueError("root_side must be 1 or 2")
    # count first so the cap fails before allocating
    total, layer, s = 1, 1, root_side
    for depth in range(radius):
        layer *= (d1 if s == 1 else d2) - (0 if depth == 0 else 1)
        total += layer
        s = other(s)
        if total > cap:
            raise CapExceeded(f"ball has more than {cap} vertices")
    ball = TreeBall(d1, d2, radius, root_side)
    ball.side.append(root_side)
    ball.depth.append(0)
    ball.parent.append(-1)
    ball.children.append([])
    frontier = [0]
    for depth in range(radius):
        nxt = []
        for v in frontier:
            count = ball.degree_of(v) - (0 if v == 0 else 1)
            for _ in range(count):
                w = ball.size
                ball.side.append(other(ball.side[v]))
                ball.depth.append(depth + 1)
                ball.parent.append(v)
                ball.children.append([])
                ball.children[v].append(w)
                nxt.append(w)
        frontier = nxt
    return ball


class LegalColouring:
    """kappa[v] is the colour of every arc into v; it lies in X_{other(side v)}."""

    def __init__(self, ball: TreeBall, kappa: Iterable[int]):
        self.ball = ball
        self.kappa = tuple(kappa)
        if len(self.kappa) != ball.size:
            raise ValueError("one label per ball vertex required")
        self.by_colour: list[dict[int, int]] = []
        for v in range(ball.size):
            table = {}
            for w in ball.neighbours(v):
                table[self.kappa[w]] = w
            self.by_colour.append(table)
        problems = legality_problems(ball, self.arc_colours())
        if problems:
            raise HypothesisViolation("illegal colouring: " + problems[0])

    def colour(self, u: int, v: int) -> int:
        """Colour of the arc u -> v."""
        return self.kappa[v]

    def neighbour(self, v: int, colour: int) -> int:
        return self.by_colour[v][colour]

    def arc_colours(self) -> dict[tuple[int, int], int]:
        return {(u, v): self.kappa[v] for u, v in self.ball.arcs()}

    @classmethod
    def from_arc_colours(cls, ball: TreeBall, colours: dict[tuple[int, int], int]) -> LegalColouring:
        problems = legality_problems(ball, colours)
        if problems:
            raise HypothesisViolation("illegal colouring: " + problems[0])
        kappa = [0] * ball.size
        for (u, v), c in colours.items():
            kappa[v] = c
        if ball.size == 1:
            kappa[0] = 0
        return cls(ball, kappa)

    def restricted(self, sub: TreeBall) -> LegalColouring:
        """The same colouring seen on a sub-ball cut from this one."""
        if sub.host is None:
            raise ValueError("not a sub-ball")
        return LegalColouring(sub, [self.kappa[h] for h in sub.host])

    def relabelled(self, v: int, perm: dict[int, int]) -> LegalColouring:
        """Apply a bijection of colours to the out-arcs of v (a different legal colouring).

        Only valid for the root, whose out-colours are unconstrained by a parent.
        """
        kappa = list(self.kappa)
        for w in self.ball.neighbours(v):
            kappa[w] = perm[kappa[w]]
        return LegalColouring(self.ball, kappa)

    def __eq__(self, other) -> bool:
        return isinstance(other, LegalColouring) and self.kappa == other.kappa

    def __hash__(self):
        return hash(self.kappa)


def legality_problems(ball: TreeBall, colours: dict[tuple[int, int], int]) -> list[str]:
    """Arc-by-arc legality check; returns a list of human readable failures."""
    problems = []
    expected = set(ball.arcs())
    if set(colours) != expected:
        problems.append("colour map does not cover exactly the arcs of the ball")
        return problems
    for v in range(ball.size):
        outs = [colours[(v, w)] for w in ball.neighbours(v)]
        d = ball.degree_of(v)
        if any(not 0 <= c < d for c in outs):
            problems.append(f"out-arc of {v} coloured outside X_{ball.side[v]}")
        if len(set(outs)) != len(outs):
            problems.append(f"out-arcs of {v} repeat a colour")
        if ball.is_interior(v) and sorted(outs) != list(range(d)):
            problems.append(f"out-arcs of interior vertex {v} are not a bijection onto X_{ball.side[v]}")
        ins = {colours[(w, v)] for w in ball.neighbours(v)}
        if len(ins) > 1:
            problems.append(f"in-arcs of {v} carry more than one colour")
    return problems


def is_legal(ball: TreeBall, colours: dict[tuple[int, int], int]) -> bool:
    return not legality_problems(ball, colours)


def legal_colouring(ball: TreeBall) -> LegalColouring:
    """Deterministic colouring: the root gets 0, children take the least unused colours."""
    kappa = [0] * ball.size
    for v in range(ball.size):
        taken = set() if ball.parent[v] < 0 else {kappa[ball.parent[v]]}
        free = (c for c in range(ball.degree_of(v)) if c not in taken)
        for w in ball.children[v]:
            kappa[w] = next(free)
    return LegalColouring(ball, kappa)


def random_legal_colouring(ball: TreeBall, seed: int) -> LegalColouring:
    rng = random.Random(seed)
    kappa = [0] * ball.size
    kappa[0] = rng.randrange(ball.valency(other(ball.root_side)))
    for v in range(ball.size):
        taken = None if ball.parent[v] < 0 else kappa[ball.parent[v]]
        free = [c for c in range(ball.degree_of(v)) if c != taken]
        rng.shuffle(free)
        for w, c in zip(ball.children[v], free):
            kappa[w] = c
    return LegalColouring(ball, kappa)


def ball_to_json(ball: TreeBall, colouring: Optional[LegalColouring] = None) -> str:
    doc = {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "d1": ball.d1,
        "d2": ball.d2,
        "radius": ball.radius,
        "root_side": ball.root_side,
        "vertices": [
            {"id": v, "side": ball.side[v], "depth": ball.depth[v], "parent": ball.parent[v]}
            for v in range(ball.size)
        ],
        "arcs": [
            [u, v] + ([colouring.colour(u, v)] if colouring is not None else []) for u, v in ball.arcs()
        ],
    }
    return json.dumps(doc, indent=2)


def ball_from_json(text: str) -> tuple[TreeBall, Optional[LegalColouring]]:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError("not a tree ball document")
    if doc.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported tree ball version {doc.get('version')}")
    ball = TreeBall(doc["d1"], doc["d2"], doc["radius"], doc["root_side"])
    for rec in doc["vertices"]:
        ball.side.append(rec["side"])
        ball.depth.append(rec["depth"])
        ball.parent.append(rec["parent"])
        ball.children.append([])
    for v, p in enumerate(ball.parent):
        if p >= 0:
            ball.children[p].append(v)
    ball.check_shape()
    colouring = None
    if doc["arcs"] and len(doc["arcs"][0]) == 3:
        colouring = LegalColouring.from_arc_colours(ball, {(u, v): c for u, v, c in doc["arcs"]})
    return ball, colouring
