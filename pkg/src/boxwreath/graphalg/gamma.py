"""Trees of lobes Gamma(Lambda, m), the connectivity-one primitivity test, and the
orbital-graph / cartesian-power comparison for product-action groups."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from ..errors import HypothesisViolation
from ..permcore import PermGroup, is_primitive, symmetric
from ..products import coordinate_components, pa_embedding, wreath_product_action
from ..products.wreath import encode
from ..treebox import build_ball, legal_colouring
from .graphs import cartesian_power, orbital_graph
from .lobes import (
    AnyGraph,
    are_isomorphic,
    automorphism_group,
    connectivity_small,
    is_directed_cycle,
    lobes_and_bcv_tree,
)


def gamma_graph(Lam: AnyGraph, m: int, r: int) -> AnyGraph:
    """Truncation of the connectivity-one graph in which every vertex lies in m copies of Lambda.

    ``r`` is the radius in the block-cut-vertex tree (one point-to-point step is
    two tree steps). An odd radius is rounded up so the outer lobes are whole.
    Points are numbered breadth-first from the centre (point 0). The lobe
    registry lists, for each lobe, its points in the order of Lambda's vertices.
    Boundary points are those lying in fewer than m lobes.
    """
    if Lam.n < 3:
        raise HypothesisViolation("Lambda needs at least three vertices")
    if connectivity_small(Lam) < 2:
        raise HypothesisViolation("Lambda must be 2-connected")
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        warnings.warn("m = 1 gives Lambda itself, which is not of connectivity one", stacklevel=2)
        return type(Lam)(Lam.n, Lam.arcs() if Lam.directed else Lam.edges, (), [tuple(range(Lam.n))])
    if r < 0:
        raise ValueError("radius must be non-negative")
    radius = r + (r % 2)
    ball = build_ball(Lam.n, m, radius, root_side=2)
    kappa = legal_colouring(ball).kappa
    points = ball.vertices_on_side(2)
    pid = {v: i for i, v in enumerate(points)}
    lobes = []
    lobe_pairs = []
    for u in ball.vertices_on_side(1):
        members = [-1] * Lam.n
        for w in ball.neighbours(u):
            members[kappa[w]] = pid[w]
        lobes.append(tuple(members))
        lobe_pairs.append(u)
    pairs = Lam.arcs() if Lam.directed else Lam.edges
    links = [(lobe[a], lobe[b]) for lobe in lobes for a, b in pairs]
    boundary = [pid[v] for v in points if len(ball.neighbours(v)) < m]
    out = type(Lam)(len(points), links, boundary, lobes)
    # the block-cut-vertex tree is the ball itself; keep the correspondence for export
    out.tree = ball
    out.tree_vertex_of_point = points
    out.tree_vertex_of_lobe = lobe_pairs
    return out


@dataclass
class ConnOneReport:
    clauses: dict = field(default_factory=dict)

    @property
    def primitive(self) -> bool:
        return all(self.clauses.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v]

    def as_dict(self) -> dict:
        return {"primitive": self.primitive, "clauses": dict(self.clauses), "failed": self.failed}


def conn_one_primitivity_check(
    g: AnyGraph, lobe_group: Optional[Union[PermGroup, Sequence[PermGroup]]] = None
) -> ConnOneReport:
    """Decide the connectivity-one primitivity criterion on a graph with a lobe registry.

    ``lobe_group`` acts on each lobe's registry positions; by default the
    automorphism group of each lobe is used.
    """
    if g.lobes is None:
        raise HypothesisViolation("the graph carries no lobe registry")
    rep = ConnOneReport()
    rep.clauses["connectivity one"] = connectivity_small(g) == 1
    found = sorted(tuple(sorted(l)) for l in lobes_and_bcv_tree(g).lobes) if g.symmetrized().is_connected() else []
    rep.clauses["registry matches lobes"] = found == sorted(tuple(sorted(l)) for l in g.lobes)
    shapes = [g.induced(list(l)) for l in g.lobes]
    rep.clauses["lobes pairwise isomorphic"] = all(are_isomorphic(shapes[0], s) for s in shapes[1:])
    rep.clauses["at least three vertices"] = all(len(l) >= 3 for l in g.lobes)
    if lobe_group is None:
        groups = [automorphism_group(s) for s in shapes[:1]] if rep.clauses["lobes pairwise isomorphic"] else [
            automorphism_group(s) for s in shapes
        ]
    elif isinstance(lobe_group, PermGroup):
        groups = [lobe_group]
    else:
        groups = list(lobe_group)
    rep.clauses["lobe groups primitive"] = all(
        G.degree >= 2 and G.is_transitive() and bool(is_primitive(G)) for G in groups
    )
    rep.clauses["not a directed cycle"] = not (g.directed and any(is_directed_cycle(s) for s in shapes))
    return rep


@dataclass
class CartesianLemmaReport:
    gamma: int
    delta: int
    m: int
    sigma_edges: int
    product_edges: int
    equal: bool
    missing_from_sigma: list
    extra_in_sigma: list

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "delta": self.delta,
            "m": self.m,
            "sigma_edges": self.sigma_edges,
            "product_edges": self.product_edges,
            "equal": self.equal,
        }


def orbital_cartesian_lemma_check(
    H: Optional[PermGroup], gamma: int, delta: int, m: int, embedding=None
) -> CartesianLemmaReport:
    """Compare the orbital graph of the embedded group through (gamma..gamma), (delta, gamma..gamma)
    with the m-fold cartesian power of the orbital graph {gamma, delta}^H, edge by edge.

    Without ``embedding`` the group is H Wr S_m in product action with its
    coordinate factors. With an embedding, H defaults to the group induced on the
    fibre by its setwise stabiliser and gamma is the embedding's base point.
    """
    if embedding is None:
        if H is None:
            raise ValueError("H or an embedding is required")
        G = wreath_product_action(H, symmetric(m))
        alpha = encode((gamma,) * m, H.degree)
        embedding = pa_embedding(G, coordinate_components(H, m), alpha)
    E = embedding
    if E.m != m:
        raise HypothesisViolation("m does not match the embedding")
    if gamma != E.gamma:
        raise HypothesisViolation("gamma must be the embedding's base point on the fibre")
    if H is None:
        H = E.G.setwise_stabilizer(E.Y).restrict(E.Y)
    y = len(E.Y)
    Gam = orbital_graph(H, gamma, delta)
    if not Gam.is_connected():
        raise HypothesisViolation("the orbital graph of H must be connected")
    images = [E.phi_hat(g) for g in E.G.generators]
    base = encode((gamma,) * m, y)
    Sigma = orbital_graph(PermGroup(images, degree=y**m), base, encode((delta,) + (gamma,) * (m - 1), y))
    P = cartesian_power(Gam, m)
    s_edges, p_edges = set(Sigma.edges), set(P.edges)
    return CartesianLemmaReport(
        gamma,
        delta,
        m,
        len(s_edges),
        len(p_edges),
        s_edges == p_edges,
        sorted(p_edges - s_edges)[:10],
        sorted(s_edges - p_edges)[:10],
    )


__all__ = [
    "CartesianLemmaReport",
    "ConnOneReport",
    "conn_one_primitivity_check",
    "gamma_graph",
    "orbital_cartesian_lemma_check",
]
