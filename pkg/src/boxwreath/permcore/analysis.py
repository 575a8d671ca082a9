"""Suborbits, regularity and primitivity of finite permutation groups."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ..errors import HypothesisViolation, SdUndefined
from .group import PermGroup


class Regularity(str, enum.Enum):
    REGULAR = "regular"
    SEMIREGULAR_INTRANSITIVE = "semiregular-intransitive"
    NONREGULAR = "nonregular"


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def is_invariant(self, G: PermGroup) -> bool:
        where = {p: i for i, blk in enumerate(self.blocks) for p in blk}
        for g in G.generators:
            for blk in self.blocks:
                if len({where[g(p)] for p in blk}) != 1:
                    return False
        return True


@dataclass(frozen=True)
class SuborbitReport:
    """Orbits of the stabiliser of ``base_point``, sorted by smallest element.

    ``pairs[i]`` is the index of the suborbit paired with ``suborbits[i]``.
    ``sd`` is None for regular groups.
    """

    base_point: int
    suborbits: tuple[tuple[int, ...], ...]
    pairs: tuple[int, ...]
    sd: Optional[int]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.suborbits)

    @property
    def subdegrees(self) -> list[int]:
        return sorted(self.sizes)

    def require_sd(self) -> int:
        if self.sd is None:
            raise SdUndefined("sd is undefined for a regular group")
        return self.sd


def _require_transitive(G: PermGroup, what: str) -> None:
    if not G.is_transitive():
        raise HypothesisViolation(f"{what} requires a transitive group")


def suborbits(G: PermGroup, alpha: int = 0) -> SuborbitReport:
    _require_transitive(G, "suborbits")
    stab = G.stabilizer(alpha)
    subs = [tuple(o) for o in stab.orbits()]
    where = {p: i for i, s in enumerate(subs) for p in s}
    trans = G.orbit_transversal(alpha)
    pairs = []
    for s in subs:
        g = trans[s[0]]
        # pair of beta^{G_alpha} is (alpha^{g^-1})^{G_alpha} where alpha^g = beta
        pairs.append(where[(~g)(alpha)])
    nontrivial = [len(s) for s in subs if len(s) > 1]
    sd = min(nontrivial) if nontrivial else None
    return SuborbitReport(alpha, tuple(subs), tuple(pairs), sd)


def min_subdegree(G: PermGroup) -> int:
    """sd(G); raises SdUndefined for regular groups."""
    return suborbits(G, 0).require_sd()


def regularity_status(G: PermGroup) -> Regularity:
    order = G.order()
    if all(len(o) == order for o in G.orbits()):
        if G.is_transitive():
            return Regularity.REGULAR
        return Regularity.SEMIREGULAR_INTRANSITIVE
    return Regularity.NONREGULAR


def is_regular(G: PermGroup) -> bool:
    return regularity_status(G) is Regularity.REGULAR


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def minimal_block_system(G: PermGroup, alpha: int, beta: int) -> BlockSystem:
    """Finest G-invariant partition in which alpha and beta share a block."""
    n = G.degree
    uf = _UnionFind(n)
    uf.union(alpha, beta)
    queue = [(alpha, beta)]
    gens = [g.images for g in G.generators]
    while queue:
        a, b = queue.pop()
        for g in gens:
            x, y = g[a], g[b]
            if uf.union(x, y):
                queue.append((x, y))
    classes: dict[int, list[int]] = {}
    for p in range(n):
        classes.setdefault(uf.find(p), []).append(p)
    return BlockSystem(tuple(sorted(tuple(c) for c in classes.values())))


@dataclass(frozen=True)
class PrimitivityResult:
    primitive: bool
    witness: Optional[BlockSystem] = None

    def __bool__(self) -> bool:
        return self.primitive


def is_primitive(G: PermGroup) -> PrimitivityResult:
    """Primitivity via minimal blocks; an imprimitive group comes with a minimal block system."""
    if G.degree < 2:
        raise HypothesisViolation("primitivity needs degree >= 2")
    _require_transitive(G, "is_primitive")
    best = None
    for beta in range(1, G.degree):
        bs = minimal_block_system(G, 0, beta)
        if bs.block_count > 1 and (best is None or bs.block_size < best.block_size):
            best = bs
            if best.block_size == 2:
                break
    return PrimitivityResult(best is None, best)


def pair_orbit(G: PermGroup, alpha: int, beta: int) -> set[tuple[int, int]]:
    """The orbital (alpha, beta)^G as a set of ordered pairs."""
    seen = {(alpha, beta)}
    stack = [(alpha, beta)]
    gens = [g.images for g in G.generators]
    while stack:
        a, b = stack.pop()
        for g in gens:
            img = (g[a], g[b])
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return seen


def higman_primitivity(G: PermGroup) -> bool:
    """Every orbital digraph is connected (Higman's criterion), checked by BFS."""
    _require_transitive(G, "higman_primitivity")
    n = G.degree
    if n < 2:
        raise HypothesisViolation("primitivity needs degree >= 2")
    covered = set()
    for beta in range(1, n):
        if (0, beta) in covered:
            continue
        arcs = pair_orbit(G, 0, beta)
        covered |= arcs
        adj: dict[int, list[int]] = {}
        for a, b in arcs:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n:
            return False
    return True
