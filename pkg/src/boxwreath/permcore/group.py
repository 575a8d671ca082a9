"""Permutation groups given by generators, backed by a Schreier-Sims chain.

The chain is built lazily the first time order or membership is needed. Base
points are taken in natural order: each new base point is the smallest point
moved by the strong generator that forced it. Everything here is deterministic;
random elements only use the ``random.Random`` instance handed in.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from ..errors import CapExceeded, HypothesisViolation
from .perm import Permutation, compose, invert, is_identity

DEFAULT_ELEMENT_CAP = 1_000_000


def _first_moved(p: tuple) -> int:
    for i, j in enumerate(p):
        if i != j:
            return i
    raise ValueError("identity has no moved point")


def _extend_orbit(orbit: list, trans: dict, gens: list) -> None:
    # Rescans the whole orbit so newly added generators reach old points too.
    k = 0
    while k < len(orbit):
        p = orbit[k]
        up = trans[p]
        for g in gens:
            q = g[p]
            if q not in trans:
                trans[q] = compose(up, g)
                orbit.append(q)
        k += 1


class _Chain:
    __slots__ = ("base", "gens", "orbits", "trans")

    def __init__(self, degree: int, generators: Sequence[tuple]):
        ident = tuple(range(degree))
        self.base: list[int] = []
        self.gens: list[list[tuple]] = []
        self.orbits: list[list[int]] = []
        self.trans: list[dict[int, tuple]] = []
        strong = []
        for g in generators:
            if not is_identity(g) and g not in strong:
                strong.append(g)
        for g in strong:
            if all(g[b] == b for b in self.base):
                self.base.append(_first_moved(g))
        for i, b in enumerate(self.base):
            lvl = [g for g in strong if all(g[c] == c for c in self.base[:i])]
            self.gens.append(lvl)
            orbit, trans = [b], {b: ident}
            _extend_orbit(orbit, trans, lvl)
            self.orbits.append(orbit)
            self.trans.append(trans)
        checked: list[set] = [set() for _ in self.base]

        i = len(self.base) - 1
        while i >= 0:
            extended_to = None
            orbit, trans, lvl = self.orbits[i], self.trans[i], self.gens[i]
            for p in orbit:
                up = trans[p]
                for k, s in enumerate(lvl):
                    if (p, k) in checked[i]:
                        continue
                    checked[i].add((p, k))
                    q = s[p]
                    sg = compose(compose(up, s), invert(trans[q]))
                    if is_identity(sg):
                        continue
                    h, j = self.strip(sg, start=i + 1)
                    if j == len(self.base) and is_identity(h):
                        continue
                    if j == len(self.base):
                        b = _first_moved(h)
                        self.base.append(b)
                        self.gens.append([])
                        self.orbits.append([b])
                        self.trans.append({b: ident})
                        checked.append(set())
                    for lvl_idx in range(i + 1, j + 1):
                        self.gens[lvl_idx].append(h)
                        _extend_orbit(self.orbits[lvl_idx], self.trans[lvl_idx], self.gens[lvl_idx])
                    extended_to = j
                    break
                if extended_to is not None:
                    break
            if extended_to is None:
                i -= 1
            else:
                i = extended_to

    def strip(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for lvl in range(start, len(self.base)):
            b = self.base[lvl]
            u = self.trans[lvl].get(g[b])
            if u is None:
                return g, lvl
            g = compose(g, invert(u))
        return g, len(self.base)

    def order(self) -> int:
        return math.prod(len(o) for o in self.orbits)


class PermGroup:
    """A permutation group of a fixed degree, immutable after construction."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = gens[0].degree
        for g in gens:
            if not isinstance(g, Permutation):
                raise TypeError(f"expected Permutation, got {type(g).__name__}")
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
        uniq = []
        for g in gens:
            if not g.is_identity() and g not in uniq:
                uniq.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(uniq)
        self._chain: _Chain | None = None
        self._orbits: list[list[int]] | None = None

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls([], degree=degree)

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self.degree, [g.images for g in self.generators])
        return self._chain

    @property
    def base(self) -> list[int]:
        return list(self.chain.base)

    def strong_generators(self) -> list[Permutation]:
        seen = []
        for lvl in self.chain.gens:
            for g in lvl:
                if g not in seen:
                    seen.append(g)
        return [Permutation._trusted(g) for g in seen]

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, j = self.chain.strip(g.images)
        return j == len(self.chain.base) and is_identity(h)

    __contains__ = contains

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    __hash__ = None

    def is_trivial(self) -> bool:
        return not self.generators

    # -- orbits -----------------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        """Orbit of ``point`` in breadth-first discovery order."""
        self._check_point(point)
        orbit, seen = [point], {point}
        for p in orbit:
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    orbit.append(q)
        return orbit

    def orbit_transversal(self, point: int) -> dict[int, Permutation]:
        """Maps each orbit point ``q`` to some ``u`` with ``u(point) == q`` (BFS tree)."""
        self._check_point(point)
        ident = tuple(range(self.degree))
        orbit, trans = [point], {point: ident}
        _extend_orbit(orbit, trans, [g.images for g in self.generators])
        return {q: Permutation._trusted(trans[q]) for q in orbit}

    def orbits(self) -> list[list[int]]:
        """Orbits as sorted lists, ordered by smallest element."""
        if self._orbits is None:
            seen = set()
            out = []
            for p in range(self.degree):
                if p not in seen:
                    orb = sorted(self.orbit(p))
                    seen.update(orb)
                    out.append(orb)
            self._orbits = out
        return [list(o) for o in self._orbits]

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    # -- subgroups --------------------------------------------------------

    def stabilizer(self, point: int) -> PermGroup:
        """Point stabiliser, generated by Schreier generators until the order matches."""
        self._check_point(point)
        trans = self.orbit_transversal(point)
        target = self.order() // len(trans)
        gens: list[Permutation] = []
        sub = PermGroup([], degree=self.degree)
        if target == 1:
            return sub
        for p in sorted(trans):
            up = trans[p]
            for s in self.generators:
                sg = up * s * ~trans[s(p)]
                if sg.is_identity() or sg in sub:
                    continue
                gens.append(sg)
                sub = PermGroup(gens, degree=self.degree)
                if sub.order() == target:
                    return sub
        raise AssertionError("Schreier generators failed to reach the stabiliser order")

    def setwise_stabilizer(self, block: Iterable[int]) -> PermGroup:
        """Stabiliser of a point set, via Schreier generators on the orbit of the set."""
        def image(b, g):
            return tuple(sorted(g.images[p] for p in b))

        start = tuple(sorted(block))
        trans = {start: self.identity()}
        orbit = [start]
        for b in orbit:
            for g in self.generators:
                img = image(b, g)
                if img not in trans:
                    trans[img] = trans[b] * g
                    orbit.append(img)
        target = self.order() // len(orbit)
        gens: list[Permutation] = []
        sub = PermGroup([], degree=self.degree)
        if target == 1:
            return sub
        for b in orbit:
            for g in self.generators:
                sg = trans[b] * g * ~trans[image(b, g)]
                if sg.is_identity() or sg in sub:
                    continue
                gens.append(sg)
                sub = PermGroup(gens, degree=self.degree)
                if sub.order() == target:
                    return sub
        raise AssertionError("Schreier generators failed to reach the setwise stabiliser order")

    def pointwise_stabilizer(self, points: Iterable[int]) -> PermGroup:
        grp = self
        for p in points:
            grp = grp.stabilizer(p)
        return grp

    # -- elements ---------------------------------------------------------

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[Permutation]:
        """Every element exactly once, in a fixed order determined by the chain."""
        if self.order() > cap:
            raise CapExceeded(f"group order {self.order()} exceeds element cap {cap}")
        ch = self.chain
        levels = [[ch.trans[i][p] for p in ch.orbits[i]] for i in range(len(ch.base))]
        if not levels:
            yield self.identity()
            return
        for combo in itertools.product(*reversed(levels)):
            g = combo[0]
            for u in combo[1:]:
                g = compose(g, u)
            yield Permutation._trusted(g)

    def random_element(self, rng: random.Random) -> Permutation:
        ch = self.chain
        g = tuple(range(self.degree))
        for i in reversed(range(len(ch.base))):
            u = ch.trans[i][rng.choice(ch.orbits[i])]
            g = compose(g, u)
        return Permutation._trusted(g)

    # -- actions ----------------------------------------------------------

    def restrict(self, points: Sequence[int]) -> PermGroup:
        """Group induced on an invariant point list (relabelled 0..len-1 by position)."""
        return PermGroup([g.restrict(points) for g in self.generators], degree=len(points))

    def induced_action(
        self, objects: Sequence[Hashable], act: Callable[[Hashable, Permutation], Hashable]
    ) -> PermGroup:
        """Group induced on ``objects`` where ``act(obj, g)`` is the image object."""
        index = {o: i for i, o in enumerate(objects)}
        gens = []
        for g in self.generators:
            try:
                gens.append(Permutation([index[act(o, g)] for o in objects]))
            except KeyError:
                raise HypothesisViolation("object set is not invariant under the group") from None
        return PermGroup(gens, degree=len(objects))

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, gens=[{gens}])"


def group_from_generators(gens: Sequence[Permutation]) -> PermGroup:
    """Validated constructor: nonempty list of equal-degree permutations."""
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    degrees = {g.degree for g in gens}
    if len(degrees) != 1:
        raise ValueError(f"generator degree mismatch: {sorted(degrees)}")
    return PermGroup(gens, degree=gens[0].degree)


def orbits(G: PermGroup) -> list[list[int]]:
    return G.orbits()


def point_stabilizer(G: PermGroup, alpha: int) -> PermGroup:
    return G.stabilizer(alpha)


def closure_elements(gens: Sequence[Permutation], degree: int, cap: int = DEFAULT_ELEMENT_CAP) -> set:
    """Brute-force element closure by BFS; used as an independent oracle in tests."""
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"closure exceeds {cap} elements")
                queue.append(y)
    return seen
