"""Permutation isomorphism of small permutation groups.

Two groups G, H of the same degree are permutation isomorphic when some point
bijection t satisfies t^-1 G t = H. The search picks images in H for the
generators of G (matching cycle types), then tries to solve t g_i = h_i t by
propagating along orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..errors import CapExceeded
from .group import PermGroup
from .perm import Permutation

DEFAULT_DEGREE_CAP = 16
DEFAULT_SEARCH_BUDGET = 2_000_000


@dataclass(frozen=True)
class PermIsomorphism:
    """``theta`` is the point bijection; ``phi(g) = theta^-1 g theta``."""

    theta: Permutation

    def phi(self, g: Permutation) -> Permutation:
        return g.conjugate(self.theta)

    def point(self, alpha: int) -> int:
        return self.theta(alpha)


def _solve_conjugator(gs, hs, n) -> Optional[tuple]:
    """Some t with t(g(x)) == h(t(x)) for all pairs, or None."""
    t = [-1] * n
    used = [False] * n

    def propagate(start, image, trail):
        stack = [(start, image)]
        while stack:
            x, y = stack.pop()
            if t[x] >= 0:
                if t[x] != y:
                    return False
                continue
            if used[y]:
                return False
            t[x] = y
            used[y] = True
            trail.append(x)
            for g, h in zip(gs, hs):
                stack.append((g[x], h[y]))
        return True

    def undo(trail):
        for x in trail:
            used[t[x]] = False
            t[x] = -1

    def search():
        try:
            x = t.index(-1)
        except ValueError:
            return True
        for y in range(n):
            if used[y]:
                continue
            trail: list[int] = []
            if propagate(x, y, trail) and search():
                return True
            undo(trail)
        return False

    return tuple(t) if search() else None


def permutation_isomorphism(
    G: PermGroup,
    H: PermGroup,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Optional[PermIsomorphism]:
    n = G.degree
    if max(n, H.degree) > degree_cap:
        raise CapExceeded(f"degree {max(n, H.degree)} exceeds isomorphism cap {degree_cap}")
    if n != H.degree or G.order() != H.order():
        return None
    if sorted(map(len, G.orbits())) != sorted(map(len, H.orbits())):
        return None
    order = G.order()
    full = math.factorial(n)
    if order == full or (n > 2 and 2 * order == full):
        # S_n and A_n are the only subgroups of these orders
        return PermIsomorphism(Permutation.identity(n))
    if not G.generators:
        return PermIsomorphism(Permutation.identity(n))

    by_type: dict[tuple, list[tuple]] = {}
    for h in H.elements(cap=budget):
        by_type.setdefault(h.cycle_type(), []).append(h.images)
    gs = [g.images for g in G.generators]
    options = [by_type.get(g.cycle_type(), []) for g in G.generators]
    steps = 0

    def dfs(i, chosen):
        nonlocal steps
        if i == len(gs):
            t = _solve_conjugator(gs, chosen, n)
            if t is None:
                return None
            cand = PermGroup([Permutation._trusted(h) for h in chosen], degree=n)
            return t if cand.order() == order else None
        for h in options[i]:
            steps += 1
            if steps > budget:
                raise CapExceeded(f"isomorphism search exceeded budget {budget}")
            # partial feasibility prunes most tuples early
            if _solve_conjugator(gs[: i + 1], chosen + [h], n) is None:
                continue
            found = dfs(i + 1, chosen + [h])
            if found is not None:
                return found
        return None

    t = dfs(0, [])
    return None if t is None else PermIsomorphism(Permutation._trusted(t))


def are_permutation_isomorphic(G: PermGroup, H: PermGroup, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    return permutation_isomorphism(G, H, degree_cap=degree_cap) is not None
