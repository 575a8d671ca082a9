import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxwreath.decompose import (
    Atom,
    Box,
    Wr,
    WrImp,
    box_lobe_graph,
    box_radii,
    build_iterated_product,
    classify,
    expr_graph,
    expr_is_regular,
    expr_primitivity,
    expr_sd,
    fibrelobe_full_check,
    is_finite,
    primitivity_report,
    realize,
    sd_chain,
    spine,
    sub_truncation,
    to_text,
)
from boxwreath.errors import CapExceeded, HypothesisViolation
from boxwreath.graphalg import Ends, ends_estimate, lobes_and_bcv_tree
from boxwreath.permcore import PermGroup, Permutation, alternating, is_primitive, min_subdegree, symmetric
from boxwreath.products import base_group_product, wreath_product_action

S2, S3, C2, C3, C4, D8 = Atom("S", 2), Atom("S", 3), Atom("C", 2), Atom("C", 3), Atom("C", 4), Atom("D", 8)


# -- expressions --------------------------------------------------------------------------


def test_atoms():
    assert D8.degree == 4 and D8.group().order() == 8
    assert Atom.perm(3, [Permutation.parse("(0 1 2)", 3)]).group().order() == 3
    with pytest.raises(ValueError):
        Atom("D", 7)
    with pytest.raises(ValueError):
        Atom("Q", 3)
    with pytest.raises(ValueError):
        Box(S3, S2, 1)


def test_to_text():
    assert to_text(Box(S3, S2, 3)) == "(S(3) box S(2))@3"
    assert to_text(Wr(Box(S3, S2, 2), S2)) == "((S(3) box S(2))@2 pwr S(2))"
    assert to_text(WrImp(S3, C2)) == "(S(3) wr C(2))"
    assert to_text(Atom.perm(4, [Permutation.parse("(0 1 2 3)", 4), Permutation.identity(4)])) == "perm[4; (0 1 2 3); ()]"


def test_structure_helpers():
    e = Wr(Box(S3, S2, 4), C2)
    assert not is_finite(e) and is_finite(Wr(S3, S2))
    assert spine(e) == [S3, Box(S3, S2, 4), e]
    assert box_radii(e) == [4]


# -- realisation ---------------------------------------------------------------------------


def test_realize_kinds():
    assert realize(Wr(S3, S2)).kind == "finite"
    assert realize(Box(S3, S2)).kind == "box"
    assert realize(Wr(Box(S3, S2, 2), S2)).kind == "wr-infinite"
    assert realize(WrImp(Box(S3, S2, 2), S2)).kind == "wrimp-infinite"
    assert realize(Box(Box(S3, S2, 2), S2)).kind == "unrealizable"


def test_realize_finite_orders():
    assert realize(Wr(S3, S2)).group.order() == 72
    assert realize(WrImp(S3, S2)).group.order() == 72
    with pytest.raises(CapExceeded):
        realize(Wr(Atom("S", 5), Atom("S", 3)), cap_degree=100)


def test_right_operand_must_be_finite():
    with pytest.raises(HypothesisViolation):
        realize(Wr(S3, Box(S3, S2)))


def test_seeded_colouring_changes_nothing_structural():
    a = realize(Box(S3, S2, 3), seed=7).truncation
    b = realize(Box(S3, S2, 3)).truncation
    assert a.order() == b.order()


# -- primitivity ------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "e, expected",
    [
        (Box(S3, S2), True),
        (Box(C4, S2), False),
        (Box(D8, Atom("S", 3)), False),
        (Wr(S3, S2), True),
        (WrImp(S3, S2), False),
        (Wr(C3, S2), False),
        (Box(S3, C2), True),
    ],
)
def test_structural_primitivity(e, expected):
    assert expr_primitivity(e) == expected
    rep = primitivity_report(e)
    assert rep.agree in (True, None)


@pytest.mark.parametrize("g", ["S", "A", "C"])
@pytest.mark.parametrize("n", [3, 4])
def test_finite_primitivity_matches_block_search(g, n):
    for F in (S2, C3):
        e = Wr(Atom(g, n), F)
        assert expr_primitivity(e) == bool(is_primitive(realize(e).group))


def test_regularity():
    assert expr_is_regular(C3)
    assert not expr_is_regular(S3)
    assert not expr_is_regular(Box(S3, S2))


# -- sd -----------------------------------------------------------------------------------------


def test_sd_values():
    assert expr_sd(S3)[0] == 2
    assert expr_sd(Box(S3, S2, 3)) == (4, "truncation suborbits")
    assert expr_sd(Wr(S3, S2)) == (4, "suborbits")
    # formula for an infinite operand: smallest top orbit times the inner sd
    assert expr_sd(Wr(Box(S3, S2, 2), S2)) == (8, "formula")


@pytest.mark.parametrize("H, F", [(S3, S2), (Atom("S", 4), C2), (Atom("A", 4), C3), (Atom("D", 10), S2)])
def test_sd_formula_matches_realised_power(H, F):
    # H primitive and nonregular, so no suborbit other than the point is a singleton
    G = realize(Wr(H, F)).group
    m_orbit = min(len(o) for o in F.group().orbits())
    assert min_subdegree(G) == m_orbit * min_subdegree(H.group())


def test_sd_chain_monotone():
    chain = sd_chain(Wr(Box(S3, S2, 3), S2))
    assert chain.values == [2, 4, 8]
    assert chain.ok
    doc = chain.as_dict()
    assert [s["op"] for s in doc["steps"]] == [None, "box", "pwr"]


# -- lobe graphs and classification -------------------------------------------------------------


def test_box_lobe_graph_shape():
    B = realize(Box(S3, S2, 4)).truncation
    g = box_lobe_graph(B)
    dec = lobes_and_bcv_tree(g)
    assert dec.check(g)
    for v in g.interior():
        assert g.degree(v) == 4
    assert ends_estimate(g).verdict == Ends.MANY


def test_box_lobe_graph_is_orbital_graph():
    # the stabiliser of the centre preserves the edge set
    B = realize(Box(S3, S2, 4)).truncation
    g = box_lobe_graph(B)
    points = B.ball.vertices_on_side(2)
    pid = {v: i for i, v in enumerate(points)}
    for h in B.generators:
        moved = {tuple(sorted((pid[h(points[a])], pid[h(points[b])]))) for a, b in g.edges}
        assert moved == set(g.edges)


def test_expr_graph_finite():
    g = expr_graph(realize(Wr(S3, S2)))
    assert g.n == 9 and all(g.degree(v) == 4 for v in range(9))


@pytest.mark.parametrize(
    "e, verdict",
    [
        (Wr(S3, S2), "PA"),
        (Atom("A", 5), "FIN"),
        (Box(S3, S2, 3), "BP-candidate"),
        (Box(C4, S2, 3), "BP-candidate"),
        (Wr(Box(S3, S2, 2), S2), "PA"),
        (Box(Box(S3, S2, 2), S2), "basic/undetermined"),
        (WrImp(Box(S3, S2, 2), S2), "basic/undetermined"),
    ],
)
def test_classify(e, verdict):
    rep = classify(e)
    assert rep.verdict == verdict
    assert rep.verdict != "OAS"


def test_classify_permgroup_and_json():
    rep = classify(wreath_product_action(symmetric(3), symmetric(2)))
    assert rep.verdict == "PA"
    doc = json.loads(rep.to_json())
    assert (doc["schema"], doc["version"]) == ("boxwreath.classification", 1)
    assert list(doc) == ["schema", "version", "verdict", "input", "radii", "ends", "evidence"]
    assert classify(alternating(5)).verdict == "FIN"


def test_classify_is_deterministic():
    e = Box(S3, S2, 3)
    assert classify(e).to_json() == classify(e).to_json()
    assert classify(e, seed=4).to_json() == classify(e, seed=4).to_json()


def test_shadow_decomposition_verified():
    rep = classify(Wr(Box(S3, S2, 2), S2))
    assert rep.evidence["decomposition_verified"]
    assert rep.ends["verdict"] == "One"


# -- iterated products and fibrelobes -------------------------------------------------------------


def test_build_iterated_product_alternates():
    e = build_iterated_product(S3, [S2, S2, C2], radius=2)
    assert e == Wr(Box(Wr(S3, S2), S2, 2), C2)
    assert build_iterated_product(S3, [S2], pattern=["box"]) == Box(S3, S2, 3)


def test_build_iterated_product_rejects_bad_tops():
    with pytest.raises(HypothesisViolation):
        build_iterated_product(S3, [S2, Atom.perm(2, []), S2])
    with pytest.raises(HypothesisViolation):
        build_iterated_product(S3, [Atom.perm(3, [Permutation.parse("(0 1)", 3)])])


def test_fibrelobe_full_check_wr():
    amb = Wr(S3, S2)
    G = realize(amb).group
    assert fibrelobe_full_check(G, amb).all_pass
    assert not fibrelobe_full_check(base_group_product(symmetric(3), 2), amb).all_pass


def test_fibrelobe_full_check_box():
    amb = Box(S3, S2, 3)
    R = realize(amb)
    assert fibrelobe_full_check(sub_truncation(R, symmetric(3), symmetric(2)), amb, R).all_pass
    trivial = sub_truncation(R, PermGroup.trivial(3), PermGroup.trivial(2))
    assert not fibrelobe_full_check(trivial, amb, R).all_pass


def test_fibrelobe_full_check_rejects_nested():
    with pytest.raises(HypothesisViolation):
        fibrelobe_full_check(None, Wr(Box(S3, S2), S2))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([S3, Atom("S", 4), Atom("A", 4), Atom("D", 10)]), st.sampled_from([S2, C2, C3, S3]))
def test_pwr_sd_never_decreases(H, F):
    # nonregular primitive H; sd is undefined for regular groups
    chain = sd_chain(Wr(H, F))
    assert chain.values[1] >= chain.values[0]
