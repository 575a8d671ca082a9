"""Embedding a group with a transitive normal direct product into a product-action wreath product.

Input: G on Omega, components K_1..K_m (subgroups of G, given by generators) whose
direct product M is normal and transitive, and a point alpha. The component group
K = K_1 acts on Y = alpha^K with gamma = alpha, so that K_gamma = pi_1(M_alpha).

Two independent routes are kept for the image of an element of G:

* ``phi_hat(f)`` conjugates f by the point bijection theta (the definition);
* ``phi_hat_formula(f)`` writes f = g x with g in G_alpha and x in M and
  multiplies the explicit images: (psi(h_1), ..., psi(h_m)) sigma(g) for g, and the
  coordinatewise action of g_i pi_i(x) g_i^-1 for x.

``verify`` checks that the two agree and that theta intertwines the actions.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

from ..errors import HypothesisViolation
from ..permcore import PermGroup, Permutation
from .wreath import base_group_product, decode, encode, product_action_permutation


def _commute(a: Permutation, b: Permutation) -> bool:
    return a * b == b * a


class PAEmbedding:
    def __init__(self, G: PermGroup, components: Sequence[PermGroup], alpha: int = 0):
        self.G = G
        self.components = list(components)
        self.alpha = alpha
        self.m = len(self.components)
        if self.m < 2:
            raise HypothesisViolation("need m > 1 components")
        self._check_direct_product()
        self.M = PermGroup([k for K in self.components for k in K.generators], degree=G.degree)
        self._check_normal_transitive()
        self.G_alpha = G.stabilizer(alpha)
        self._components_of_M()
        self._check_stabilizer_splits()

        K1 = self.components[0]
        self.Y = sorted(K1.orbit(alpha))
        self._y_index = {p: i for i, p in enumerate(self.Y)}
        self.gamma = self._y_index[alpha]
        self.K = PermGroup([k.restrict(self.Y) for k in K1.generators], degree=len(self.Y))
        if self.K.order() != K1.order():
            raise HypothesisViolation("K_1 does not act faithfully on Y = alpha^{K_1}")
        if len(self.Y) ** self.m != G.degree:
            raise HypothesisViolation("|Y|^m differs from the degree; the components are not a product action")

        self.transversal = self._find_transversal()
        self._build_theta()

    # -- hypotheses ---------------------------------------------------------

    def _check_direct_product(self) -> None:
        for i, j in itertools.combinations(range(self.m), 2):
            for a in self.components[i].generators:
                for b in self.components[j].generators:
                    if not _commute(a, b):
                        raise HypothesisViolation(f"components {i} and {j} do not commute")

    def _check_normal_transitive(self) -> None:
        expected = math.prod(K.order() for K in self.components)
        if self.M.order() != expected:
            raise HypothesisViolation("the components do not form a direct product")
        for K in self.components:
            if not K.is_subgroup_of(self.G):
                raise HypothesisViolation("a component is not a subgroup of G")
        for g in self.G.generators:
            for k in self.M.generators:
                if k.conjugate(g) not in self.M:
                    raise HypothesisViolation("M is not normal in G")
        if not self.M.is_transitive():
            raise HypothesisViolation("M is not transitive")

    def _components_of_M(self) -> None:
        # Orbit of alpha under M with every transversal element kept as a tuple of
        # components, so projections never need an element enumeration.
        ident = self.G.identity()
        self._split: dict[Permutation, tuple[Permutation, ...]] = {}
        tagged = [(i, k) for i, K in enumerate(self.components) for k in K.generators]
        for i, k in tagged:
            comps = [ident] * self.m
            comps[i] = k
            self._split[k] = tuple(comps)
        start = (ident,) * self.m
        self._trans = {self.alpha: start}
        orbit = [self.alpha]
        for p in orbit:
            for i, k in tagged:
                q = k(p)
                if q not in self._trans:
                    comps = list(self._trans[p])
                    comps[i] = comps[i] * k
                    self._trans[q] = tuple(comps)
                    orbit.append(q)
        for comps in self._trans.values():
            self._split[self._product(comps)] = comps
        # Schreier generators of M_alpha, also as component tuples
        self._stab_gens = []
        for p in orbit:
            for i, k in tagged:
                comps = list(self._trans[p])
                comps[i] = comps[i] * k
                back = self._trans[k(p)]
                sg = tuple(a * ~b for a, b in zip(comps, back))
                x = self._product(sg)
                if not x.is_identity():
                    self._split[x] = sg
                    self._stab_gens.append(sg)

    @staticmethod
    def _product(comps) -> Permutation:
        x = comps[0]
        for k in comps[1:]:
            x = x * k
        return x

    def element(self, comps: Sequence[Permutation]) -> Permutation:
        """The element k_1 k_2 ... k_m of M, remembered with its components."""
        comps = tuple(comps)
        for i, k in enumerate(comps):
            if k not in self.components[i]:
                raise HypothesisViolation(f"component {i} is not in K_{i + 1}")
        x = self._product(comps)
        self._split[x] = comps
        return x

    def pi(self, i: int, x: Permutation) -> Permutation:
        """Projection onto the i-th component, for generators and transversal elements of M."""
        try:
            return self._split[x][i]
        except KeyError:
            raise HypothesisViolation("no component decomposition recorded for this element") from None

    def _check_stabilizer_splits(self) -> None:
        self.M_alpha = PermGroup([self._product(c) for c in self._stab_gens], degree=self.G.degree)
        proj_orders = []
        for i in range(self.m):
            gens = [c[i] for c in self._stab_gens]
            proj_orders.append(PermGroup(gens, degree=self.G.degree).order())
        if math.prod(proj_orders) != self.M_alpha.order():
            raise HypothesisViolation("M_alpha is not the product of its projections")

    # -- sigma, transversal, psi ---------------------------------------------

    def sigma(self, g: Permutation) -> Permutation:
        """The permutation i -> j of components with K_i^g = K_j."""
        images = []
        for K in self.components:
            conj = [k.conjugate(g) for k in K.generators]
            for j, L in enumerate(self.components):
                if all(c in L for c in conj):
                    images.append(j)
                    break
            else:
                raise HypothesisViolation("conjugation does not permute the components")
        if len(set(images)) != self.m:
            raise HypothesisViolation("conjugation does not permute the components")
        return Permutation(images)

    def _find_transversal(self) -> list[Permutation]:
        # breadth-first over G_alpha from the identity; first hit for each component wins
        ident = self.G.identity()
        found: dict[int, Permutation] = {0: ident}
        seen = {ident}
        frontier = [ident]
        gens = self.G_alpha.generators
        while frontier and len(found) < self.m:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = g * s
                    if h in seen:
                        continue
                    seen.add(h)
                    nxt.append(h)
                    i = self.sigma(h)(0)
                    if i not in found:
                        found[i] = h
            frontier = nxt
        if len(found) < self.m:
            raise HypothesisViolation("G_alpha does not permute the components transitively")
        return [found[i] for i in range(self.m)]

    def h_elements(self, g: Permutation) -> list[Permutation]:
        """h_i = g_i g g_{i^sigma}^-1 for g in G_alpha; each lies in N_{G_alpha}(K)."""
        s = self.sigma(g)
        T = self.transversal
        return [T[i] * g * ~T[s(i)] for i in range(self.m)]

    def psi(self, h: Permutation) -> Permutation:
        """psi(h): gamma^k -> gamma^(h^-1 k h), as a permutation of Y (by index)."""
        images = [0] * len(self.Y)
        K1 = self.components[0]
        trans = K1.orbit_transversal(self.alpha)
        for p, k in trans.items():
            images[self._y_index[p]] = self._y_index[k.conjugate(h)(self.alpha)]
        return Permutation(images)

    def on_Y(self, k: Permutation) -> Permutation:
        """An element of K_1 as a permutation of Y."""
        return k.restrict(self.Y)

    # -- phi, theta, phi_hat -------------------------------------------------

    def phi(self, x: Permutation) -> tuple[Permutation, ...]:
        """phi(x) = (g_i pi_i(x) g_i^-1)_i, each as a permutation of Y."""
        T = self.transversal
        return tuple(self.on_Y(T[i] * self.pi(i, x) * ~T[i]) for i in range(self.m))

    def _build_theta(self) -> None:
        y = len(self.Y)
        gamma_vec = (self.gamma,) * self.m
        images = [-1] * self.G.degree
        for omega, comps in self._trans.items():
            ks = self.phi(self._product(comps))
            images[omega] = encode([ks[i](gamma_vec[i]) for i in range(self.m)], y)
        self.theta = Permutation(images)

    def theta_point(self, omega: int) -> tuple[int, ...]:
        return decode(self.theta(omega), len(self.Y), self.m)

    def phi_hat(self, f: Permutation) -> Permutation:
        """delta -> theta(theta^-1(delta)^f)."""
        return f.conjugate(self.theta)

    def phi_hat_stabilizer(self, g: Permutation) -> Permutation:
        """(psi(h_1), ..., psi(h_m)) sigma(g) in the product action, for g in G_alpha."""
        return product_action_permutation([self.psi(h) for h in self.h_elements(g)], self.sigma(g))

    def phi_hat_normal(self, x: Permutation) -> Permutation:
        """Coordinatewise action of g_i pi_i(x) g_i^-1, for x in M."""
        return product_action_permutation(list(self.phi(x)), Permutation.identity(self.m))

    def split(self, f: Permutation) -> tuple[Permutation, Permutation]:
        """f = g x with g in G_alpha and x in M."""
        x = self._product(self._trans[f(self.alpha)])
        g = f * ~x
        return g, x

    def phi_hat_formula(self, f: Permutation) -> Permutation:
        g, x = self.split(f)
        return self.phi_hat_stabilizer(g) * self.phi_hat_normal(x)

    # -- verification ----------------------------------------------------------

    def verify(self, exhaustive_cap: int = 5000, samples: int = 100, seed: int = 0) -> "EmbeddingReport":
        rep = EmbeddingReport()
        rep.theta_alpha = self.theta_point(self.alpha) == (self.gamma,) * self.m
        rep.g1_identity = self.transversal[0].is_identity()

        gens = list(self.G_alpha.generators)
        rep.sigma_homomorphism = all(
            self.sigma(a * b) == self.sigma(a) * self.sigma(b) for a in gens for b in gens
        )
        rep.psi_matches_restriction = True
        for g in gens:
            for h in self.h_elements(g):
                # h fixes alpha and normalises K_1, so Y is h-invariant and psi(h) is h on Y
                if self.psi(h) != h.restrict(self.Y):
                    rep.psi_matches_restriction = False

        if self.G.order() <= exhaustive_cap:
            elements = list(self.G.elements())
            rep.mode = "exhaustive"
        else:
            rng = random.Random(seed)
            elements = [self.G.random_element(rng) for _ in range(samples)]
            rep.mode = f"random({samples}, seed={seed})"
        rep.elements_checked = len(elements)
        y = len(self.Y)
        ok_rel = ok_formula = True
        for f in elements:
            img = self.phi_hat_formula(f)
            if img != self.phi_hat(f):
                ok_formula = False
            for omega in range(self.G.degree):
                if self.theta(f(omega)) != img(self.theta(omega)):
                    ok_rel = False
                    break
        rep.intertwines = ok_rel
        rep.formula_matches_definition = ok_formula

        image_M = PermGroup([self.phi_hat_normal(x) for x in self.M.generators], degree=y**self.m)
        K_m = base_group_product(self.K, self.m, cap=max(4096, y**self.m))
        rep.image_of_M_is_K_power = image_M == K_m
        image_G = PermGroup([self.phi_hat_formula(f) for f in self.G.generators], degree=y**self.m)
        rep.image_order_matches = image_G.order() == self.G.order()
        return rep

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "alpha": self.alpha,
            "Y": self.Y,
            "gamma": self.gamma,
            "transversal": [g.cycle_string() for g in self.transversal],
            "theta": [list(self.theta_point(w)) for w in range(self.G.degree)],
        }


@dataclass
class EmbeddingReport:
    theta_alpha: bool = False
    g1_identity: bool = False
    sigma_homomorphism: bool = False
    psi_matches_restriction: bool = False
    intertwines: bool = False
    formula_matches_definition: bool = False
    image_of_M_is_K_power: bool = False
    image_order_matches: bool = False
    mode: str = ""
    elements_checked: int = 0

    @property
    def ok(self) -> bool:
        return all(
            [
                self.theta_alpha,
                self.g1_identity,
                self.sigma_homomorphism,
                self.psi_matches_restriction,
                self.intertwines,
                self.formula_matches_definition,
                self.image_of_M_is_K_power,
                self.image_order_matches,
            ]
        )


def pa_embedding(G: PermGroup, components: Sequence[PermGroup], alpha: int = 0) -> PAEmbedding:
    return PAEmbedding(G, components, alpha)


def coordinate_components(G: PermGroup, m: int) -> list[PermGroup]:
    """The m coordinate copies of G inside G^m (product action); the M of G Wr F."""
    one = Permutation.identity(G.degree)
    comps = []
    for i in range(m):
        gens = []
        for g in G.generators:
            base = [one] * m
            base[i] = g
            gens.append(product_action_permutation(base, Permutation.identity(m)))
        comps.append(PermGroup(gens, degree=G.degree**m))
    return comps
