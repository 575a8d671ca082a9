"""Wreath products in the imprimitive and product actions.

For G on X (|X| = n) and H on {0..m-1}:

* imprimitive action on X x {0..m-1}: (a, i) is encoded as ``i * n + a`` and
  (a, i)^(g_0..g_{m-1}; h) = (a^{g_i}, i^h);
* product action on X^m: a tuple is encoded row-major (last coordinate fastest)
  and coordinate i of the old point lands in position i^h after g_i is applied.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import CapExceeded, HypothesisViolation
from ..permcore import PermGroup, Permutation, is_primitive, regularity_status
from ..permcore.analysis import Regularity

PRODUCT_ACTION_CAP = 4096


@dataclass(frozen=True)
class WreathElement:
    base: tuple[Permutation, ...]
    top: Permutation

    def __post_init__(self):
        if len(self.base) != self.top.degree:
            raise ValueError("need one base component per point of the top group")
        if len({g.degree for g in self.base}) > 1:
            raise ValueError("base components must share a degree")

    @property
    def m(self) -> int:
        return self.top.degree

    @property
    def n(self) -> int:
        return self.base[0].degree

    def imprimitive(self) -> Permutation:
        n, h = self.n, self.top
        images = [0] * (n * self.m)
        for i, g in enumerate(self.base):
            for a in range(n):
                images[i * n + a] = h(i) * n + g(a)
        return Permutation._trusted(tuple(images))

    def product(self) -> Permutation:
        return product_action_permutation(self.base, self.top)


def encode(coords: Sequence[int], n: int) -> int:
    idx = 0
    for c in coords:
        idx = idx * n + c
    return idx


def decode(idx: int, n: int, m: int) -> tuple[int, ...]:
    out = [0] * m
    for i in reversed(range(m)):
        idx, out[i] = divmod(idx, n)
    return tuple(out)


def product_action_permutation(base: Sequence[Permutation], top: Permutation) -> Permutation:
    m = top.degree
    n = base[0].degree
    images = []
    for coords in itertools.product(range(n), repeat=m):
        new = [0] * m
        for i, a in enumerate(coords):
            new[top(i)] = base[i](a)
        images.append(encode(new, n))
    return Permutation._trusted(tuple(images))


def _check_inputs(G: PermGroup, H: PermGroup) -> None:
    if G.degree < 1 or H.degree < 1:
        raise ValueError("wreath product factors need positive degree")


def _wreath_generators(G: PermGroup, H: PermGroup) -> list[WreathElement]:
    m = H.degree
    one = Permutation.identity(G.degree)
    gens = []
    for i in range(m):
        for g in G.generators:
            base = [one] * m
            base[i] = g
            gens.append(WreathElement(tuple(base), Permutation.identity(m)))
    for h in H.generators:
        gens.append(WreathElement((one,) * m, h))
    return gens


def wreath_imprimitive(G: PermGroup, H: PermGroup) -> PermGroup:
    """G wr H on |X|*m points; the copies of X are blocks."""
    _check_inputs(G, H)
    return PermGroup([w.imprimitive() for w in _wreath_generators(G, H)], degree=G.degree * H.degree)


def wreath_product_action(G: PermGroup, H: PermGroup, cap: int = PRODUCT_ACTION_CAP) -> PermGroup:
    """G Wr H on X^m."""
    _check_inputs(G, H)
    degree = G.degree ** H.degree
    if degree > cap:
        raise CapExceeded(f"product action degree {G.degree}^{H.degree} = {degree} exceeds cap {cap}")
    return PermGroup([w.product() for w in _wreath_generators(G, H)], degree=degree)


def base_group_product(G: PermGroup, m: int, cap: int = PRODUCT_ACTION_CAP) -> PermGroup:
    """G^m acting coordinatewise on X^m."""
    return wreath_product_action(G, PermGroup.trivial(m), cap=cap)


def wreath_order(G: PermGroup, H: PermGroup) -> int:
    return G.order() ** H.degree * H.order()


def wr_primitivity_predicate(G: PermGroup, H: PermGroup) -> bool:
    """The structural criterion: G primitive and not regular, H transitive."""
    if G.degree < 2 or not G.is_transitive() or not H.is_transitive():
        return False
    if regularity_status(G) is Regularity.REGULAR:
        return False
    return bool(is_primitive(G))


def fibre(point: int, coordinate: int, n: int, m: int) -> list[int]:
    """Points differing from ``point`` at most in ``coordinate``, in coordinate order."""
    coords = list(decode(point, n, m))
    out = []
    for a in range(n):
        coords[coordinate] = a
        out.append(encode(coords, n))
    return out


@dataclass(frozen=True)
class FibrelobeReport:
    point_transitive: bool
    fibrelobe_transitive: bool
    fibrelobe_action_matches: bool
    fibrelobes_at_point_match: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.point_transitive
            and self.fibrelobe_transitive
            and self.fibrelobe_action_matches
            and self.fibrelobes_at_point_match
        )

    def as_dict(self) -> dict:
        return {
            "point_transitive": self.point_transitive,
            "fibrelobe_transitive": self.fibrelobe_transitive,
            "fibrelobe_action_matches": self.fibrelobe_action_matches,
            "fibrelobes_at_point_match": self.fibrelobes_at_point_match,
            "all_pass": self.all_pass,
        }


def all_fibres(n: int, m: int) -> list[tuple[int, ...]]:
    """Every fibre as a sorted point tuple, sorted."""
    out = set()
    for p in range(n**m):
        for i in range(m):
            out.add(tuple(sorted(fibre(p, i, n, m))))
    return sorted(out)


def _same_group(A: PermGroup, B: PermGroup) -> bool:
    return A.degree == B.degree and A.order() == B.order() and A.is_subgroup_of(B)


def fibrelobe_full_check_wr(S: PermGroup, G: PermGroup, F: PermGroup, alpha: int = 0) -> FibrelobeReport:
    """Check the four fibrelobe conditions for S inside G Wr F (product action).

    The fibre through ``alpha`` in coordinate 0 is identified with X by its
    coordinate; the fibres through ``alpha`` are identified with {0..m-1}.
    """
    ambient = wreath_product_action(G, F)
    if S.degree != ambient.degree or not S.is_subgroup_of(ambient):
        raise HypothesisViolation("S is not a subgroup of the product-action wreath product")
    n, m = G.degree, F.degree
    point_transitive = S.is_transitive()

    fibres = all_fibres(n, m)
    fibre_group = S.induced_action(fibres, lambda f, g: tuple(sorted(g(p) for p in f)))
    fibre_transitive = fibre_group.is_transitive()

    # induced action of the setwise stabiliser of one fibre, compared with G
    own = fibre(alpha, 0, n, m)
    stab = S.setwise_stabilizer(own)
    on_fibre = stab.restrict(own)
    fibre_matches = _same_group(on_fibre, G)

    # induced action of S_alpha on the m fibres through alpha, compared with F
    through = [tuple(fibre(alpha, i, n, m)) for i in range(m)]
    S_alpha = S.stabilizer(alpha)
    on_fibres = S_alpha.induced_action(through, lambda f, g: _match_fibre(f, g, through))
    at_point = _same_group(on_fibres, F)
    return FibrelobeReport(point_transitive, fibre_transitive, fibre_matches, at_point)


def _match_fibre(f, g, candidates):
    img = {g(p) for p in f}
    for c in candidates:
        if set(c) == img:
            return c
    raise HypothesisViolation("a point stabiliser element moved a fibre off the point")

