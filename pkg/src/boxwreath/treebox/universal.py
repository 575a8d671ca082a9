"""Truncated universal groups U_L(G1, G2) on a tree ball and the induced box product.

Ball automorphisms are plain ``Permutation`` objects on the ball's vertex ids.
Every automorphism of a ball fixes its centre, so the group built here is the
restriction of the centre stabiliser U_root to the ball. Extension from the
ball to the whole tree is always possible, so this restriction is exact.

The group is generated locally: for an interior vertex v and a generator s of
the allowed local group at v, the automorphism acting by s at v and at every
vertex of v's side below v (identity elsewhere) is admissible. These generate
the whole truncation, by peeling off theta values top-down.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import CapExceeded, HypothesisViolation
from ..permcore import PermGroup, Permutation, permutation_isomorphism
from .ball import LegalColouring, TreeBall, build_ball, legal_colouring

ENUMERATION_CAP = 1_000_000


def theta(L: LegalColouring, g: Permutation, v: int) -> Permutation:
    """Local action of g at v read through the colouring: c -> colour of g(neighbour of v coloured c)."""
    ball = L.ball
    if not ball.is_interior(v):
        raise HypothesisViolation(f"theta needs an interior vertex, {v} is on the boundary")
    d = ball.degree_of(v)
    return Permutation([L.kappa[g(L.neighbour(v, c))] for c in range(d)])


def _local_group(G1: PermGroup, G2: PermGroup, side: int) -> PermGroup:
    return G1 if side == 1 else G2


def is_ball_automorphism(ball: TreeBall, g: Permutation) -> bool:
    if g.degree != ball.size or g(0) != 0:
        return False
    for v in range(ball.size):
        if ball.side[g(v)] != ball.side[v] or ball.depth[g(v)] != ball.depth[v]:
            return False
        p = ball.parent[v]
        if p >= 0 and ball.parent[g(v)] != g(p):
            return False
    return True


def admissibility_failures(
    L: LegalColouring, g: Permutation, G1: PermGroup, G2: PermGroup
) -> list[int]:
    """Interior vertices where theta(g, v) leaves the prescribed local group."""
    ball = L.ball
    if not is_ball_automorphism(ball, g):
        raise HypothesisViolation("not an automorphism of the ball")
    bad = []
    for v in ball.interior():
        if not _local_group(G1, G2, ball.side[v]).contains(theta(L, g, v)):
            bad.append(v)
    return bad


def is_admissible(L: LegalColouring, g: Permutation, G1: PermGroup, G2: PermGroup) -> bool:
    return is_ball_automorphism(L.ball, g) and not admissibility_failures(L, g, G1, G2)


def automorphism_from_thetas(L: LegalColouring, choose) -> Permutation:
    """Build a ball automorphism top-down; ``choose(v, image_of_v)`` returns theta at interior v.

    The returned local permutation must send the colour of v's parent to the
    colour of the image's parent; a mismatch raises HypothesisViolation.
    """
    ball = L.ball
    images = [-1] * ball.size
    images[0] = 0
    for v in range(ball.size):
        if not ball.is_interior(v):
            continue
        t = choose(v, images[v])
        p = ball.parent[v]
        if p >= 0 and L.kappa[ball.parent[images[v]]] != t(L.kappa[p]):
            raise HypothesisViolation(f"local choice at {v} does not respect the parent colour")
        for w in ball.children[v]:
            images[w] = L.neighbour(images[v], t(L.kappa[w]))
    return Permutation(images)


def subtree_generator(L: LegalColouring, v: int, s: Permutation) -> Permutation:
    """Act by s at v and at every same-side vertex below v, identity elsewhere."""
    ball = L.ball
    ident_cache: dict[int, Permutation] = {}

    def choose(u, image):
        if ball.is_ancestor(v, u) and (ball.depth[u] - ball.depth[v]) % 2 == 0:
            return s
        d = ball.degree_of(u)
        return ident_cache.setdefault(d, Permutation.identity(d))

    return automorphism_from_thetas(L, choose)


def local_generators(L: LegalColouring, G1: PermGroup, G2: PermGroup) -> list[Permutation]:
    ball = L.ball
    stab_cache: dict[tuple[int, int], PermGroup] = {}
    gens = []
    for v in ball.interior():
        side = ball.side[v]
        G = _local_group(G1, G2, side)
        if v == 0:
            allowed = G
        else:
            key = (side, L.kappa[ball.parent[v]])
            if key not in stab_cache:
                stab_cache[key] = G.stabilizer(key[1])
            allowed = stab_cache[key]
        for s in allowed.generators:
            if not s.is_identity():
                gens.append(subtree_generator(L, v, s))
    return gens


@dataclass
class BoxTruncation:
    G1: PermGroup
    G2: PermGroup
    ball: TreeBall
    colouring: LegalColouring
    generators: list[Permutation]
    _group: Optional[PermGroup] = field(default=None, repr=False)

    @property
    def radius(self) -> int:
        return self.ball.radius

    @property
    def group(self) -> PermGroup:
        """The admissible ball automorphisms (the centre stabiliser restricted to the ball)."""
        if self._group is None:
            self._group = PermGroup(self.generators, degree=self.ball.size)
        return self._group

    def order(self) -> int:
        return self.group.order()

    def contains(self, g: Permutation) -> bool:
        return is_admissible(self.colouring, g, self.G1, self.G2)

    def local_group(self, side: int) -> PermGroup:
        return _local_group(self.G1, self.G2, side)

    def point_action(self) -> BoxPointAction:
        return box_point_action(self)


def truncated_universal_group(
    G1: PermGroup,
    G2: PermGroup,
    r: int,
    root_side: int = 2,
    colouring: Optional[LegalColouring] = None,
) -> BoxTruncation:
    if colouring is not None:
        ball = colouring.ball
        if (ball.d1, ball.d2, ball.radius) != (G1.degree, G2.degree, r):
            raise HypothesisViolation("colouring lives on a ball of a different shape")
    else:
        ball = build_ball(G1.degree, G2.degree, r, root_side)
        colouring = legal_colouring(ball)
    gens = local_generators(colouring, G1, G2)
    return BoxTruncation(G1, G2, ball, colouring, gens)


def enumerate_admissible(
    L: LegalColouring, G1: PermGroup, G2: PermGroup, cap: int = ENUMERATION_CAP
) -> list[Permutation]:
    """Brute-force oracle: every automorphism of the rooted ball, filtered by admissibility.

    Layered backtracking over arbitrary child permutations; theta is only used
    to filter, never to construct.
    """
    ball = L.ball
    interior = ball.interior()
    total = 1
    for v in interior:
        total *= math.factorial(len(ball.children[v]))
        if total > cap:
            raise CapExceeded(f"ball has more than {cap} automorphisms")
    out = []
    images = [-1] * ball.size
    images[0] = 0

    def place(idx: int) -> None:
        if idx == len(interior):
            g = Permutation(images)
            if not admissibility_failures(L, g, G1, G2):
                out.append(g)
            return
        v = interior[idx]
        kids = ball.children[v]
        targets = ball.children[images[v]]
        for perm in itertools.permutations(targets):
            for a, b in zip(kids, perm):
                images[a] = b
            place(idx + 1)

    place(0)
    return sorted(out)


# -- partial isomorphisms between sub-balls ------------------------------------


@dataclass(frozen=True)
class PartialIsomorphism:
    """A map B(src, radius) -> B(dst, radius) with admissible local actions at its interior."""

    src: int
    dst: int
    radius: int
    mapping: dict
    thetas: dict

    def __call__(self, v: int) -> int:
        return self.mapping[v]


def transfer_map(B: BoxTruncation, src: int, dst: int, radius: int) -> PartialIsomorphism:
    """Witness that some element of U maps src to dst, restricted to B(src, radius).

    Local actions are identity at src and a transversal element elsewhere.
    Raises HypothesisViolation when the required colour move is impossible.
    """
    ball, L = B.ball, B.colouring
    if ball.side[src] != ball.side[dst]:
        raise HypothesisViolation("U preserves the sides of the tree")
    if radius > ball.radius - max(ball.depth[src], ball.depth[dst]):
        raise HypothesisViolation("requested radius leaves the ball")
    sub = ball.sub_ball(src, radius)
    mapping = {src: dst}
    thetas = {}
    trans_cache: dict[tuple[int, int], dict] = {}
    for i in range(sub.size):
        if sub.depth[i] >= radius:
            continue
        u = sub.host[i]
        img = mapping[u]
        G = B.local_group(ball.side[u])
        d = ball.degree_of(u)
        if sub.parent[i] < 0:
            t = Permutation.identity(d)
        else:
            p = sub.host[sub.parent[i]]
            a, b = L.kappa[p], L.kappa[mapping[p]]
            key = (ball.side[u], a)
            if key not in trans_cache:
                trans_cache[key] = G.orbit_transversal(a)
            if b not in trans_cache[key]:
                raise HypothesisViolation(f"no local element moves colour {a} to {b}")
            t = trans_cache[key][b]
        thetas[u] = t
        for j in sub.children[i]:
            w = sub.host[j]
            mapping[w] = L.neighbour(img, t(L.kappa[w]))
    return PartialIsomorphism(src, dst, radius, mapping, thetas)


def check_partial_isomorphism(B: BoxTruncation, f: PartialIsomorphism) -> bool:
    """Independent check: injective, side and adjacency preserving, admissible theta inside."""
    ball, L = B.ball, B.colouring
    dom = list(f.mapping)
    if len(set(f.mapping.values())) != len(dom):
        return False
    for u in dom:
        if ball.side[f(u)] != ball.side[u]:
            return False
        if ball.distance(f.src, u) < f.radius:
            nbrs = ball.neighbours(u)
            if sorted(f(w) for w in nbrs) != sorted(ball.neighbours(f(u))):
                return False
            local = Permutation([L.kappa[f(L.neighbour(u, c))] for c in range(ball.degree_of(u))])
            if not B.local_group(ball.side[u]).contains(local):
                return False
    return True


# -- the induced action on V2 ---------------------------------------------------


@dataclass
class BoxPointAction:
    """Finite-scale view of G1 box G2 acting on the V2 vertices of the ball.

    The full group does not preserve a finite ball, so the action is recorded
    through the stabiliser of the centre (``stabilizer``, a PermGroup on
    ``points`` by position) and through transfer witnesses for transitivity.
    """

    truncation: BoxTruncation
    points: list[int]
    stabilizer: PermGroup

    @property
    def root(self) -> int:
        return 0

    def root_orbit(self) -> list[int]:
        """V2 ball vertices in the U-orbit of the centre: in-colour in the same G1-orbit."""
        B = self.truncation
        kappa = B.colouring.kappa
        colours = set(B.G1.orbit(kappa[0])) if B.ball.side[0] == 2 else set(B.G2.orbit(kappa[0]))
        return [v for v in self.points if kappa[v] in colours]

    def witnesses(self) -> dict[int, PartialIsomorphism]:
        B = self.truncation
        out = {}
        for v in self.root_orbit():
            out[v] = transfer_map(B, 0, v, B.ball.radius - B.ball.depth[v])
        return out

    def is_transitive(self) -> bool:
        B = self.truncation
        orbit = self.root_orbit()
        if len(orbit) != len(self.points):
            return False
        return all(check_partial_isomorphism(B, f) for f in self.witnesses().values())

    def suborbits(self) -> list[list[int]]:
        """Orbits of the centre stabiliser on V2 ball vertices (ball vertex ids)."""
        return sorted(([self.points[i] for i in o] for o in self.stabilizer.orbits()), key=lambda o: (len(o), o))

    def subdegrees(self) -> list[int]:
        return sorted(len(o) for o in self.suborbits())

    def sd(self) -> Optional[int]:
        nontrivial = [len(o) for o in self.suborbits() if len(o) > 1]
        return min(nontrivial) if nontrivial else None

    def shortcut_size(self, w: int) -> int:
        """Suborbit size of w as a product of local orbit sizes along the geodesic from the centre."""
        B = self.truncation
        ball, kappa = B.ball, B.colouring.kappa
        path = []
        x = w
        while x >= 0:
            path.append(x)
            x = ball.parent[x]
        path.reverse()
        size = 1
        for t in range(1, len(path)):
            G = B.local_group(ball.side[path[t - 1]])
            if t == 1:
                size *= len(G.orbit(kappa[path[1]]))
            else:
                size *= len(G.stabilizer(kappa[path[t - 2]]).orbit(kappa[path[t]]))
        return size


def box_point_action(B: BoxTruncation) -> BoxPointAction:
    if B.ball.side[0] != 2:
        raise HypothesisViolation("the point action is read from a ball centred at a V2 vertex")
    points = B.ball.vertices_on_side(2)
    return BoxPointAction(B, points, B.group.restrict(points))


# -- colourings, local actions, fibrelobes --------------------------------------


def colouring_conjugacy(
    L: LegalColouring, Lp: LegalColouring, G1: PermGroup, G2: PermGroup
) -> Permutation:
    """A centre-fixing ball automorphism c with c^-1 U_L c = U_L'.

    Built top-down so that every local action of c (read from L to L') lies in
    the prescribed local group. The result is checked on generators both ways.
    """
    ball = L.ball
    if Lp.ball is not ball and (Lp.ball.d1, Lp.ball.d2, Lp.ball.radius, Lp.ball.root_side) != (
        ball.d1,
        ball.d2,
        ball.radius,
        ball.root_side,
    ):
        raise HypothesisViolation("colourings live on different balls")
    images = [-1] * ball.size
    images[0] = 0
    trans_cache: dict[tuple[int, int], dict] = {}
    for v in range(ball.size):
        if not ball.is_interior(v):
            continue
        G = _local_group(G1, G2, ball.side[v])
        d = ball.degree_of(v)
        if v == 0:
            beta = Permutation.identity(d)
        else:
            a, b = L.kappa[ball.parent[v]], Lp.kappa[images[ball.parent[v]]]
            key = (ball.side[v], a)
            if key not in trans_cache:
                trans_cache[key] = G.orbit_transversal(a)
            if b not in trans_cache[key]:
                raise HypothesisViolation(
                    "centre in-colours lie in different local orbits; no centre-fixing conjugator exists"
                )
            beta = trans_cache[key][b]
        for w in ball.children[v]:
            images[w] = Lp.neighbour(images[v], beta(L.kappa[w]))
    c = Permutation(images)
    if not verify_colouring_conjugacy(L, Lp, G1, G2, c):
        raise RuntimeError("colouring conjugator failed verification (internal error)")
    return c


def verify_colouring_conjugacy(
    L: LegalColouring, Lp: LegalColouring, G1: PermGroup, G2: PermGroup, c: Permutation
) -> bool:
    if not is_ball_automorphism(L.ball, c):
        return False
    if any(c(v) != v and L.ball.side[c(v)] != L.ball.side[v] for v in range(L.ball.size)):
        return False
    for g in local_generators(L, G1, G2):
        if not is_admissible(Lp, g.conjugate(c), G1, G2):
            return False
    inv = ~c
    for g in local_generators(Lp, G1, G2):
        if not is_admissible(L, g.conjugate(inv), G1, G2):
            return False
    return True


@dataclass(frozen=True)
class LocalActionReport:
    site: int
    side: int
    induced: PermGroup
    expected: PermGroup
    equal: bool
    isomorphic: bool


def local_action(B: BoxTruncation, site: int) -> PermGroup:
    """Group induced by the stabiliser of ``site`` on its neighbours, listed by colour."""
    ball = B.ball
    if not ball.is_interior(site):
        raise HypothesisViolation(f"vertex {site} is on the boundary of the ball")
    if site == 0:
        L, group_gens = B.colouring, B.generators
    else:
        sub = ball.sub_ball(site, ball.radius - ball.depth[site])
        L = B.colouring.restricted(sub)
        group_gens = local_generators(L, B.G1, B.G2)
    d = ball.degree_of(site)
    return PermGroup([theta(L, g, 0) for g in group_gens], degree=d)


def local_action_verify(B: BoxTruncation, site: int) -> LocalActionReport:
    induced = local_action(B, site)
    side = B.ball.side[site]
    expected = B.local_group(side)
    equal = induced == expected
    iso = permutation_isomorphism(induced, expected) is not None
    return LocalActionReport(site, side, induced, expected, equal, iso)


def box_fibrelobe_check(S: BoxTruncation, ambient: BoxTruncation):
    """The four fibrelobe clauses for S = U(H1, H2) inside U(G1, G2) on the same coloured ball.

    Points are V2 vertices and lobes are V1 vertices. Transitivity is read off
    the in-colour orbits and confirmed by transfer witnesses.
    """
    from ..products import FibrelobeReport

    if S.colouring != ambient.colouring:
        raise HypothesisViolation("S and the ambient truncation use different coloured balls")
    if not all(ambient.contains(g) for g in S.generators):
        raise HypothesisViolation("S is not contained in the ambient truncation")
    ball = S.ball
    if ball.radius < 2:
        raise HypothesisViolation("the lobe clauses need a ball of radius at least 2")
    points = box_point_action(S)
    point_transitive = points.is_transitive()

    kappa = S.colouring.kappa
    lobes = ball.vertices_on_side(1)
    start = lobes[0]
    reach = set(S.G2.orbit(kappa[start]))
    lobe_orbit = [u for u in lobes if kappa[u] in reach]
    lobe_transitive = len(lobe_orbit) == len(lobes) and all(
        check_partial_isomorphism(S, transfer_map(S, start, u, ball.radius - max(ball.depth[start], ball.depth[u])))
        for u in lobe_orbit
    )
    on_lobe = local_action(S, start) == ambient.G1
    at_point = local_action(S, 0) == ambient.G2
    return FibrelobeReport(point_transitive, lobe_transitive, on_lobe, at_point)


def colour_preserving_truncation(L: LegalColouring) -> BoxTruncation:
    """U(1, 1): automorphisms that preserve the colouring exactly."""
    return truncated_universal_group(
        PermGroup.trivial(L.ball.d1), PermGroup.trivial(L.ball.d2), L.ball.radius, L.ball.root_side, L
    )


__all__ = [
    "BoxPointAction",
    "BoxTruncation",
    "LocalActionReport",
    "PartialIsomorphism",
    "admissibility_failures",
    "automorphism_from_thetas",
    "box_fibrelobe_check",
    "box_point_action",
    "check_partial_isomorphism",
    "colour_preserving_truncation",
    "colouring_conjugacy",
    "enumerate_admissible",
    "is_admissible",
    "is_ball_automorphism",
    "local_action",
    "local_action_verify",
    "local_generators",
    "subtree_generator",
    "theta",
    "transfer_map",
    "truncated_universal_group",
    "verify_colouring_conjugacy",
]
