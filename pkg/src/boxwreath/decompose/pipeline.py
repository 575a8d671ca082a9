"""Realise group expressions at finite scale, test primitivity, track sd, classify."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from ..errors import CapExceeded, HypothesisViolation, SdUndefined
from ..graphalg import (
    Graph,
    cartesian_power,
    conn_one_primitivity_check,
    ends_estimate,
    lobes_and_bcv_tree,
    orbital_graph,
)
from ..permcore import (
    PermGroup,
    Regularity,
    is_primitive,
    min_subdegree,
    pair_orbit,
    regularity_status,
    suborbits,
)
from ..products import (
    coordinate_decomposition,
    fibrelobe_full_check_wr,
    find_cartesian_decompositions,
    verify_cartesian_decomposition,
    wreath_imprimitive,
    wreath_product_action,
)
from ..products.wreath import PRODUCT_ACTION_CAP
from ..treebox import (
    BoxTruncation,
    box_fibrelobe_check,
    box_point_action,
    build_ball,
    random_legal_colouring,
    truncated_universal_group,
)
from .expr import Atom, Box, GroupExpr, Wr, WrImp, box_radii, is_finite, spine, to_text

SCHEMA = "boxwreath.classification"
SCHEMA_VERSION = 1
ENDS_MIN_RADIUS = 4


@dataclass
class Realization:
    """Finite-scale stand-in for an expression.

    kind is one of: finite (``group`` is the whole group), box (``truncation``
    holds the centre stabiliser on a ball), wr-infinite / wrimp-infinite (an
    infinite left operand ``inner`` with finite top group ``top``), or
    unrealizable (``reason`` says why).
    """

    expr: GroupExpr
    kind: str
    group: Optional[PermGroup] = None
    truncation: Optional[BoxTruncation] = None
    inner: Optional[Realization] = None
    top: Optional[PermGroup] = None
    reason: str = ""

    @property
    def finite(self) -> bool:
        return self.kind == "finite"


def realize(e: GroupExpr, cap_degree: int = PRODUCT_ACTION_CAP, seed: Optional[int] = None) -> Realization:
    if isinstance(e, Atom):
        return Realization(e, "finite", group=e.group())
    right = realize(e.right, cap_degree, seed)
    if not right.finite:
        raise HypothesisViolation("the right operand of a product must be a finite group")
    F = right.group
    left = realize(e.left, cap_degree, seed)
    if isinstance(e, Box):
        if not left.finite:
            return Realization(
                e, "unrealizable", inner=left, top=F, reason="box with an infinite left operand needs a locally infinite tree"
            )
        G1 = left.group
        colouring = None
        if seed is not None:
            colouring = random_legal_colouring(build_ball(G1.degree, F.degree, e.radius, 2), seed)
        return Realization(e, "box", truncation=truncated_universal_group(G1, F, e.radius, 2, colouring))
    if left.finite:
        if isinstance(e, Wr):
            return Realization(e, "finite", group=wreath_product_action(left.group, F, cap=cap_degree))
        degree = left.group.degree * F.degree
        if degree > cap_degree:
            raise CapExceeded(f"imprimitive degree {degree} exceeds cap {cap_degree}")
        return Realization(e, "finite", group=wreath_imprimitive(left.group, F))
    if left.kind == "unrealizable":
        return Realization(e, "unrealizable", inner=left, top=F, reason=left.reason)
    kind = "wr-infinite" if isinstance(e, Wr) else "wrimp-infinite"
    return Realization(e, kind, inner=left, top=F)


# -- regularity and primitivity --------------------------------------------------


def _box_subdegrees(B: BoxTruncation) -> list[int]:
    return box_point_action(B).subdegrees()


def expr_is_regular(e: GroupExpr, R: Optional[Realization] = None) -> bool:
    R = R or realize(e)
    if R.finite:
        return regularity_status(R.group) == Regularity.REGULAR
    if R.kind == "box":
        return all(s == 1 for s in _box_subdegrees(R.truncation))
    if isinstance(e, Box):
        return R.top.order() == 1 and expr_is_regular(e.left)
    # product of an infinite operand: the top group fixes the constant tuple
    return R.top.order() == 1 and expr_is_regular(e.left, R.inner)


def expr_primitivity(e: GroupExpr) -> bool:
    """Structural primitivity: recursive use of the wreath and box criteria."""
    if isinstance(e, Atom):
        return bool(is_primitive(e.group()))
    F = realize(e.right).group
    m = F.degree
    if isinstance(e, WrImp):
        if m == 1:
            return expr_primitivity(e.left)
        left = realize(e.left)
        if left.finite and left.group.degree == 1:
            return bool(is_primitive(F))
        return False
    if isinstance(e, Wr) and m == 1:
        return expr_primitivity(e.left)
    return expr_primitivity(e.left) and not expr_is_regular(e.left) and F.is_transitive()


@dataclass
class PrimitivityReport:
    expr: str
    structural: bool
    direct: Optional[bool]
    method: str

    @property
    def agree(self) -> Optional[bool]:
        return None if self.direct is None else self.direct == self.structural

    def as_dict(self) -> dict:
        return {"structural": self.structural, "direct": self.direct, "method": self.method, "agree": self.agree}


def primitivity_report(e: GroupExpr, cap_degree: int = PRODUCT_ACTION_CAP) -> PrimitivityReport:
    """Structural verdict plus an independent check where one exists at finite scale.

    Finite groups use block search. A box truncation uses orbital connectivity:
    every distance-two orbital graph on the truncated points must be connected
    when the structural verdict says primitive.
    """
    structural = expr_primitivity(e)
    R = realize(e, cap_degree)
    if R.finite:
        return PrimitivityReport(to_text(e), structural, bool(is_primitive(R.group)), "block search")
    if R.kind == "box":
        B = R.truncation
        G1 = B.G1
        gamma = B.colouring.kappa[0]
        if not G1.is_transitive() or not B.G2.is_transitive():
            return PrimitivityReport(to_text(e), structural, False, "orbital connectivity")
        others = [o for o in G1.stabilizer(gamma).orbits() if gamma not in o]
        connected = all(box_lobe_graph(B, o[0]).is_connected() for o in others)
        direct = connected and not expr_is_regular(e, R)
        if direct and not structural:
            # primitive lobes are necessary; orbital connectivity at distance two cannot see the rest
            return PrimitivityReport(to_text(e), structural, None, "orbital connectivity (inconclusive)")
        return PrimitivityReport(to_text(e), structural, direct, "orbital connectivity")
    return PrimitivityReport(to_text(e), structural, None, "structural only")


# -- orbital graphs of a box truncation -----------------------------------------


def box_lobe_graph(B: BoxTruncation, delta: Optional[int] = None) -> Graph:
    """Orbital graph of the box product through the centre and a point at tree distance 2.

    Vertices are the V2 ball vertices in ball order. A lobe (interior V1
    vertex) carries the pairs whose colours lie in the G1-orbital of
    (colour of centre, delta); only lobes in the U-orbit of the centre's first
    lobe contribute. The registry lists each lobe's points by colour.
    """
    ball, kappa = B.ball, B.colouring.kappa
    G1, G2 = B.G1, B.G2
    gamma = kappa[0]
    if delta is None:
        subs = sorted((o for o in G1.stabilizer(gamma).orbits() if gamma not in o), key=lambda o: (len(o), o))
        if not subs:
            raise HypothesisViolation("the lobe group has no second point")
        delta = subs[0][0]
    if delta == gamma:
        raise HypothesisViolation("delta must differ from the centre colour")
    pairs = pair_orbit(G1, gamma, delta)
    points = ball.vertices_on_side(2)
    pid = {v: i for i, v in enumerate(points)}
    start = ball.children[0][0]
    colours = set(G2.orbit(kappa[start]))
    edges, lobes = [], []
    for x in ball.vertices_on_side(1):
        if not ball.is_interior(x) or kappa[x] not in colours:
            continue
        by_colour = [pid[B.colouring.neighbour(x, c)] for c in range(ball.d1)]
        lobes.append(tuple(by_colour))
        for a, b in pairs:
            edges.append((by_colour[a], by_colour[b]))
    in_lobes = [0] * len(points)
    for lobe in lobes:
        for p in lobe:
            in_lobes[p] += 1
    boundary = [i for i in range(len(points)) if in_lobes[i] < ball.d2]
    return Graph(len(points), edges, boundary, lobes)


# -- sd chains ------------------------------------------------------------------


@dataclass
class SdStep:
    expr: str
    sd: int
    op: Optional[str]
    method: str
    ok: Optional[bool]

    def as_dict(self) -> dict:
        return {"expr": self.expr, "sd": self.sd, "op": self.op, "method": self.method, "ok": self.ok}


@dataclass
class SdChain:
    steps: list[SdStep] = field(default_factory=list)

    @property
    def values(self) -> list[int]:
        return [s.sd for s in self.steps]

    @property
    def ok(self) -> bool:
        return all(s.ok is not False for s in self.steps)

    def as_dict(self) -> dict:
        return {"values": self.values, "ok": self.ok, "steps": [s.as_dict() for s in self.steps]}


def _min_orbit(F: PermGroup) -> int:
    return min(len(o) for o in F.orbits())


def expr_sd(e: GroupExpr, R: Optional[Realization] = None, cap_degree: int = PRODUCT_ACTION_CAP) -> tuple[int, str]:
    """sd of the expression and how it was obtained."""
    R = R or realize(e, cap_degree)
    if R.finite:
        return min_subdegree(R.group), "suborbits"
    if R.kind == "box":
        sd = box_point_action(R.truncation).sd()
        if sd is None:
            raise SdUndefined("the box truncation has no nontrivial suborbit")
        return sd, "truncation suborbits"
    inner_sd, _ = expr_sd(e.left, R.inner, cap_degree)
    if R.inner.kind == "box" and _box_subdegrees(R.inner.truncation).count(1) > 1:
        # a second fixed point of the stabiliser gives small suborbits the formula misses
        raise SdUndefined("the sd formula needs an operand whose point stabiliser fixes only the point")
    if isinstance(e, WrImp):
        # the other suborbits of an imprimitive action over an infinite operand are infinite
        return inner_sd, "formula"
    return _min_orbit(R.top) * inner_sd, "formula"


def sd_chain(e: GroupExpr, cap_degree: int = PRODUCT_ACTION_CAP) -> SdChain:
    """sd along the left spine, innermost first, with the monotonicity verdict of each step.

    Going outward sd must strictly increase across a box and not decrease across
    a product-action Wr. Imprimitive steps carry no constraint (ok is None).
    """
    chain = SdChain()
    prev = None
    for node in spine(e):
        sd, method = expr_sd(node, None, cap_degree)
        if isinstance(node, Atom):
            op, ok = None, None
        elif isinstance(node, Box):
            op, ok = "box", prev < sd
        elif isinstance(node, Wr):
            op, ok = "pwr", prev <= sd
        else:
            op, ok = "wr", None
        chain.steps.append(SdStep(to_text(node), sd, op, method, ok))
        prev = sd
    return chain


# -- classification -------------------------------------------------------------


@dataclass
class ClassificationReport:
    verdict: str
    expr: str
    radii: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)
    ends: Optional[dict] = None

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": SCHEMA_VERSION,
            "verdict": self.verdict,
            "input": self.expr,
            "radii": list(self.radii),
            "ends": self.ends,
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def _digest(lobes) -> str:
    text = json.dumps(sorted(list(l) for l in lobes))
    return hashlib.sha256(text.encode()).hexdigest()


def _finite_orbital(G: PermGroup) -> Optional[Graph]:
    if not G.is_transitive() or G.degree < 2:
        return None
    rep = suborbits(G, 0)
    others = [s for s in rep.suborbits if 0 not in s]
    if not others:
        return None
    best = min(others, key=lambda s: (len(s), s))
    return orbital_graph(G, 0, best[0])


def _classify_group(G: PermGroup, text: str, cap_degree: int) -> ClassificationReport:
    decs = find_cartesian_decompositions(G, cap=max(cap_degree, G.degree)) if G.degree > 1 else []
    graph = _finite_orbital(G)
    ends = ends_estimate(graph).as_dict() if graph is not None else {"verdict": "Zero"}
    evidence = {"degree": G.degree, "order": G.order(), "decompositions": [d.as_lists() for d in decs]}
    if decs:
        evidence["decomposition"] = decs[0].as_lists()
        return ClassificationReport("PA", text, [], evidence, ends)
    return ClassificationReport("FIN", text, [], evidence, ends)


def _ends_radius(r: int) -> int:
    r = max(r, ENDS_MIN_RADIUS)
    return r + (r % 2)


def _shadow(R: Realization, radius: int, cap_degree: int) -> tuple[PermGroup, Graph]:
    """A finite stand-in (point stabiliser on truncated points, orbital graph with boundary)."""
    if R.finite:
        g = _finite_orbital(R.group)
        if g is None:
            raise HypothesisViolation("no orbital graph for the finite operand")
        return R.group, g
    if R.kind == "box":
        B0 = R.truncation
        B = truncated_universal_group(B0.G1, B0.G2, max(radius, B0.radius), 2)
        return box_point_action(B).stabilizer, box_lobe_graph(B)
    if R.kind == "wr-infinite":
        inner_group, inner_graph = _shadow(R.inner, radius, cap_degree)
        group = wreath_product_action(inner_group, R.top, cap=cap_degree)
        return group, cartesian_power(inner_graph, R.top.degree, cap=cap_degree)
    raise HypothesisViolation(f"no finite stand-in for a {R.kind} expression")


def expr_graph(R: Realization, cap_degree: int = PRODUCT_ACTION_CAP) -> Graph:
    """The orbital graph an expression is analysed through at finite scale.

    Finite groups use the orbital graph of a smallest nontrivial suborbit, a box
    uses its lobe graph on the truncation as realised, and a product-action
    power of an infinite operand uses the cartesian power of the operand's graph.
    """
    if R.kind == "box":
        return box_lobe_graph(R.truncation)
    radius = max([ENDS_MIN_RADIUS] + box_radii(R.expr))
    return _shadow(R, radius, cap_degree)[1]


def classify(
    item: Union[PermGroup, GroupExpr], cap_degree: int = PRODUCT_ACTION_CAP, seed: Optional[int] = None
) -> ClassificationReport:
    """FIN, PA, BP-candidate or basic/undetermined. OAS is never claimed."""
    if isinstance(item, PermGroup):
        return _classify_group(item, f"PermGroup(degree={item.degree})", cap_degree)
    e = item
    text = to_text(e)
    R = realize(e, cap_degree, seed)
    if R.finite:
        return _classify_group(R.group, text, cap_degree)
    try:
        chain = sd_chain(e, cap_degree).as_dict()
    except SdUndefined:
        chain = None
    if R.kind == "box":
        B = R.truncation
        radius = _ends_radius(B.radius)
        big = truncated_universal_group(B.G1, B.G2, radius, 2, B.colouring if radius == B.radius else None)
        lobe_graph = box_lobe_graph(big)
        conn = conn_one_primitivity_check(lobe_graph, B.G1)
        ends = ends_estimate(lobe_graph)
        dec = lobes_and_bcv_tree(lobe_graph) if lobe_graph.is_connected() else None
        shape = lobe_graph.induced(list(lobe_graph.lobes[0])) if lobe_graph.lobes else None
        evidence = {
            "truncation_radius": B.radius,
            "orbital_graph_radius": radius,
            "points": lobe_graph.n,
            "lobes": len(lobe_graph.lobes),
            "lobe_shape": {"vertices": shape.n, "edges": [list(x) for x in shape.edges]} if shape else None,
            "lobe_registry_digest": _digest(lobe_graph.lobes),
            "bcv_lobes": len(dec.lobes) if dec else None,
            "conn_one": conn.as_dict(),
            "sd_chain": chain,
        }
        found = conn.primitive or ends.verdict.value == "Many"
        verdict = "BP-candidate" if found else "basic/undetermined"
        return ClassificationReport(verdict, text, [B.radius, radius], evidence, ends.as_dict())
    if R.kind == "wr-infinite":
        radius = _ends_radius(max([3] + box_radii(e)))
        group, graph = _shadow(R, radius, cap_degree)
        m = R.top.degree
        y = round(group.degree ** (1 / m))
        dec = coordinate_decomposition(y, m)
        ends = ends_estimate(graph)
        evidence = {
            "shadow_degree": group.degree,
            "decomposition": dec.as_lists(),
            "decomposition_verified": verify_cartesian_decomposition(dec, group),
            "sd_chain": chain,
        }
        verdict = "PA" if evidence["decomposition_verified"] else "basic/undetermined"
        return ClassificationReport(verdict, text, box_radii(e) + [radius], evidence, ends.as_dict())
    reason = R.reason or "imprimitive action over an infinite operand"
    return ClassificationReport("basic/undetermined", text, box_radii(e), {"reason": reason, "sd_chain": chain}, None)


# -- constructing iterated products ----------------------------------------------


def build_iterated_product(
    H: GroupExpr,
    Fs: Sequence[GroupExpr],
    pattern: Optional[Sequence[str]] = None,
    radius: int = 3,
) -> GroupExpr:
    """((H op1 F1) op2 F2) ... with ops alternating Wr, box, Wr, ... unless ``pattern`` says otherwise."""
    if pattern is None:
        pattern = ["Wr" if i % 2 == 0 else "Box" for i in range(len(Fs))]
    if len(pattern) != len(Fs):
        raise ValueError("pattern and Fs differ in length")
    n = len(Fs)
    e = H
    for i, (op, F) in enumerate(zip(pattern, Fs)):
        R = realize(F)
        if not R.finite:
            raise HypothesisViolation("each F_i must be finite")
        if not R.group.is_transitive():
            raise HypothesisViolation(f"F_{i + 1} is not transitive")
        if 0 < i < n - 1 and R.group.order() == 1:
            raise HypothesisViolation(f"interior F_{i + 1} must be nontrivial")
        key = op.lower()
        if key in ("wr", "pwr"):
            e = Wr(e, F)
        elif key == "box":
            e = Box(e, F, radius)
        else:
            raise ValueError(f"unknown operation {op!r}")
    return e


# -- fibrelobes -----------------------------------------------------------------


def fibrelobe_full_check(S, ambient: GroupExpr, ambient_realization: Optional[Realization] = None):
    """The four fibrelobe clauses for S inside a single Wr or box node with finite operands.

    For a box, S must be a BoxTruncation on the ambient's coloured ball (see
    ``sub_truncation``).
    """
    if not isinstance(ambient, (Wr, Box)) or not (is_finite(ambient.left) and is_finite(ambient.right)):
        raise HypothesisViolation("the ambient must be one Wr or box node over finite groups")
    R = ambient_realization or realize(ambient)
    if isinstance(ambient, Wr):
        if not isinstance(S, PermGroup):
            raise HypothesisViolation("S must be a permutation group on the product-action points")
        return fibrelobe_full_check_wr(S, realize(ambient.left).group, realize(ambient.right).group)
    if not isinstance(S, BoxTruncation):
        raise HypothesisViolation("S must be a box truncation on the ambient's coloured ball")
    return box_fibrelobe_check(S, R.truncation)


def sub_truncation(ambient: Realization, H1: PermGroup, H2: PermGroup) -> BoxTruncation:
    """U(H1, H2) on the same coloured ball as a realised box."""
    B = ambient.truncation
    if B is None:
        raise HypothesisViolation("not a box realisation")
    return truncated_universal_group(H1, H2, B.radius, B.ball.root_side, B.colouring)
