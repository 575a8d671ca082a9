"""Group expressions: atoms combined by product-action Wr, imprimitive wr and box.

The printed form is fully parenthesised and always carries the box radius, so
it reads back to the same tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..permcore import PermGroup, Permutation, alternating, cyclic, dihedral, symmetric

DEFAULT_BOX_RADIUS = 3


@dataclass(frozen=True)
class Atom:
    """A named finite group. ``kind`` is S, A, C, D (argument = order) or perm."""

    kind: str
    arg: int
    gens: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ("S", "A", "C", "D", "perm"):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == "D":
            if self.arg < 4 or self.arg % 2:
                raise ValueError("D(2n) needs an even order of at least 4")
        elif self.arg < 1:
            raise ValueError("atom degree must be positive")
        if self.kind == "perm" and any(len(g) != self.arg for g in self.gens):
            raise ValueError("generator length differs from the stated degree")

    @classmethod
    def perm(cls, degree: int, gens) -> Atom:
        return cls("perm", degree, tuple(tuple(g.images if isinstance(g, Permutation) else g) for g in gens))

    def group(self) -> PermGroup:
        if self.kind == "S":
            return symmetric(self.arg)
        if self.kind == "A":
            return alternating(self.arg)
        if self.kind == "C":
            return cyclic(self.arg)
        if self.kind == "D":
            return dihedral(self.arg)
        return PermGroup([Permutation(g) for g in self.gens], degree=self.arg)

    @property
    def degree(self) -> int:
        return self.arg // 2 if self.kind == "D" else self.arg


@dataclass(frozen=True)
class Wr:
    """Product action of left on (points of left)^(degree of right)."""

    left: GroupExpr
    right: GroupExpr


@dataclass(frozen=True)
class WrImp:
    """Imprimitive action of left wr right on (points of left) x (points of right)."""

    left: GroupExpr
    right: GroupExpr


@dataclass(frozen=True)
class Box:
    """Box product of left (local action at lobes) and right (local action at points)."""

    left: GroupExpr
    right: GroupExpr
    radius: int = DEFAULT_BOX_RADIUS

    def __post_init__(self):
        if self.radius < 2:
            raise ValueError("box truncation radius must be at least 2")


GroupExpr = Union[Atom, Wr, WrImp, Box]

OPERATOR = {Wr: "pwr", WrImp: "wr", Box: "box"}


def to_text(e: GroupExpr) -> str:
    if isinstance(e, Atom):
        if e.kind == "perm":
            gens = "; ".join(Permutation(g).cycle_string() for g in e.gens)
            return f"perm[{e.arg}" + (f"; {gens}" if gens else "") + "]"
        return f"{e.kind}({e.arg})"
    inner = f"({to_text(e.left)} {OPERATOR[type(e)]} {to_text(e.right)})"
    if isinstance(e, Box):
        return f"{inner}@{e.radius}"
    return inner


def is_finite(e: GroupExpr) -> bool:
    """No box anywhere: the expression is a finite permutation group."""
    if isinstance(e, Atom):
        return True
    if isinstance(e, Box):
        return False
    return is_finite(e.left) and is_finite(e.right)


def spine(e: GroupExpr) -> list[GroupExpr]:
    """Left spine from innermost to outermost: [H, H op F1, (H op F1) op F2, ...]."""
    out = []
    while not isinstance(e, Atom):
        out.append(e)
        e = e.left
    out.append(e)
    return out[::-1]


def box_radii(e: GroupExpr) -> list[int]:
    if isinstance(e, Atom):
        return []
    own = [e.radius] if isinstance(e, Box) else []
    return box_radii(e.left) + box_radii(e.right) + own
