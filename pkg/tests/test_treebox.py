import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxwreath.errors import CapExceeded, HypothesisViolation
from boxwreath.permcore import (
    PermGroup,
    Permutation,
    are_permutation_isomorphic,
    cyclic,
    dihedral,
    symmetric,
    transitive_catalog,
)
from boxwreath.treebox import (
    LegalColouring,
    PartialIsomorphism,
    ball_from_json,
    ball_to_json,
    box_fibrelobe_check,
    box_point_action,
    build_ball,
    check_partial_isomorphism,
    colour_preserving_truncation,
    colouring_conjugacy,
    enumerate_admissible,
    is_admissible,
    is_ball_automorphism,
    is_legal,
    legal_colouring,
    legality_problems,
    local_action,
    local_action_verify,
    random_legal_colouring,
    subtree_generator,
    theta,
    transfer_map,
    truncated_universal_group,
    verify_colouring_conjugacy,
)


def expected_ball_size(d1, d2, r, root_side=2):
    """Vertices of a biregular ball counted layer by layer."""
    deg = {1: d1, 2: d2}
    side, total, layer = root_side, 1, 1
    for depth in range(r):
        branching = deg[side] if depth == 0 else deg[side] - 1
        layer *= branching
        total += layer
        side = 3 - side
    return total


# -- balls and colourings ---------------------------------------------------------


@pytest.mark.parametrize("d1, d2, r, side", [(3, 2, 2, 2), (3, 2, 3, 2), (4, 3, 2, 2), (3, 3, 3, 1), (2, 2, 4, 2)])
def test_ball_shape(d1, d2, r, side):
    ball = build_ball(d1, d2, r, side)
    assert ball.size == expected_ball_size(d1, d2, r, side)
    g = nx.Graph(ball.arcs())
    assert nx.is_tree(g)
    assert nx.is_bipartite(g)
    for v in ball.interior():
        assert ball.degree_of(v) == (d1 if ball.side[v] == 1 else d2)
    ball.check_shape()


def test_ball_distance_matches_networkx():
    ball = build_ball(3, 2, 4)
    g = nx.Graph(ball.arcs())
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    for u, v in itertools.combinations(range(ball.size), 2):
        assert ball.distance(u, v) == lengths[u][v]


def test_ball_cap():
    with pytest.raises(CapExceeded):
        build_ball(5, 5, 12, cap=1000)


def test_default_colouring_is_legal():
    ball = build_ball(3, 2, 3)
    L = legal_colouring(ball)
    assert is_legal(ball, L.arc_colours())
    for v in ball.interior():
        assert sorted(L.colour(v, w) for w in ball.neighbours(v)) == list(range(ball.degree_of(v)))


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_random_colourings_are_legal(seed):
    ball = build_ball(4, 3, 3)
    L = random_legal_colouring(ball, seed)
    assert legality_problems(ball, L.arc_colours()) == []


def test_illegal_colouring_detected():
    ball = build_ball(3, 2, 2)
    colours = dict(legal_colouring(ball).arc_colours())
    a, b = ball.children[0]
    colours[(0, a)], colours[(0, b)] = colours[(0, b)], colours[(0, b)]
    assert legality_problems(ball, colours)
    with pytest.raises(ValueError):
        LegalColouring.from_arc_colours(ball, colours)


def test_json_round_trip():
    ball = build_ball(3, 2, 3)
    L = random_legal_colouring(ball, 3)
    text = ball_to_json(ball, L)
    doc = json.loads(text)
    assert doc["schema"] == "boxwreath.treeball" and doc["version"] == 1
    ball2, L2 = ball_from_json(text)
    assert ball2.size == ball.size and ball2.arcs() == ball.arcs()
    assert L2.kappa == L.kappa


# -- local actions and admissibility ----------------------------------------------


def test_theta_cocycle():
    B = truncated_universal_group(symmetric(3), symmetric(2), 3)
    L = B.colouring
    gens = list(B.generators)
    for g, h in itertools.product(gens, repeat=2):
        for v in B.ball.interior():
            if not B.ball.is_interior(g(v)):
                continue
            assert theta(L, g * h, v) == theta(L, g, v) * theta(L, h, g(v))


def test_theta_on_boundary_raises():
    B = truncated_universal_group(symmetric(3), symmetric(2), 2)
    boundary = [v for v in range(B.ball.size) if not B.ball.is_interior(v)]
    with pytest.raises(Exception):
        theta(B.colouring, B.generators[0], boundary[0])


@pytest.mark.parametrize(
    "G1, G2, r",
    [
        (symmetric(3), symmetric(2), 2),
        (symmetric(3), symmetric(2), 3),
        (symmetric(3), symmetric(2), 4),
        (cyclic(3), symmetric(2), 3),
        (dihedral(8), symmetric(3), 2),
        (symmetric(3), cyclic(3), 2),
    ],
)
def test_generated_group_equals_enumeration(G1, G2, r):
    B = truncated_universal_group(G1, G2, r)
    brute = enumerate_admissible(B.colouring, G1, G2)
    assert B.order() == len(brute)
    assert all(B.contains(g) for g in brute)
    assert all(is_admissible(B.colouring, g, G1, G2) for g in B.generators)


def test_known_orders():
    # S3 box S2: each depth-1 lobe contributes an S2 on its two children, and so on down
    assert truncated_universal_group(symmetric(3), symmetric(2), 2).order() == 8
    assert truncated_universal_group(symmetric(3), symmetric(2), 4).order() == 128


def test_subtree_generator_is_automorphism():
    B = truncated_universal_group(symmetric(3), symmetric(2), 3)
    s = Permutation.parse("(1 2)", 3)
    v = B.ball.children[0][0]
    g = subtree_generator(B.colouring, v, s)
    assert is_ball_automorphism(B.ball, g)


def test_non_automorphism_rejected():
    ball = build_ball(3, 2, 2)
    swap = list(range(ball.size))
    a, b = ball.children[0]
    swap[a], swap[b] = b, a  # swaps parents but not their children
    assert not is_ball_automorphism(ball, Permutation(swap))


@pytest.mark.parametrize("g1, g2", [("S3", "C2"), ("C3", "C2"), ("D8", "S3"), ("S3", "S3")])
def test_locally_prescribed(g1, g2):
    cat = transitive_catalog(5)
    G1, G2 = cat[g1], cat[g2]
    B = truncated_universal_group(G1, G2, 3)
    for v in B.ball.interior():
        rep = local_action_verify(B, v)
        assert rep.equal and rep.isomorphic


def test_intransitive_local_group_gives_intransitive_point_action():
    G1 = PermGroup([Permutation.parse("(1 2)", 3)], degree=3)
    B = truncated_universal_group(G1, symmetric(2), 3)
    assert not box_point_action(B).is_transitive()


# -- point action ---------------------------------------------------------------------


def brute_suborbits(B):
    elements = enumerate_admissible(B.colouring, B.G1, B.G2)
    points = B.ball.vertices_on_side(2)
    seen, out = set(), []
    for p in points:
        if p in seen:
            continue
        orb = sorted({g(p) for g in elements})
        seen.update(orb)
        out.append(orb)
    return sorted(out, key=lambda o: (len(o), o))


@pytest.mark.parametrize("G1, G2, r", [(symmetric(3), symmetric(2), 3), (symmetric(3), symmetric(2), 4), (dihedral(8), symmetric(3), 2)])
def test_suborbits_match_enumeration(G1, G2, r):
    B = truncated_universal_group(G1, G2, r)
    assert box_point_action(B).suborbits() == brute_suborbits(B)


def test_s3_box_s2_point_action():
    B = truncated_universal_group(symmetric(3), symmetric(2), 4)
    act = box_point_action(B)
    assert act.is_transitive()
    assert act.subdegrees() == [1, 4, 8]
    assert act.sd() == 4
    for orb in act.suborbits():
        assert act.shortcut_size(orb[0]) == len(orb)


def test_transfer_witnesses_check():
    B = truncated_universal_group(symmetric(3), symmetric(2), 4)
    for v, f in box_point_action(B).witnesses().items():
        assert f(0) == v
        assert check_partial_isomorphism(B, f)


def test_transfer_between_wrong_colours_fails():
    G1 = PermGroup([Permutation.parse("(1 2)", 3)], degree=3)
    B = truncated_universal_group(G1, symmetric(2), 4)
    kappa = B.colouring.kappa
    far = [v for v in B.ball.vertices_on_side(2) if B.ball.depth[v] == 2 and kappa[v] != kappa[0]]
    with pytest.raises(HypothesisViolation):
        transfer_map(B, 0, far[0], 2)


def test_partial_isomorphism_check_rejects_bad_local_action():
    B = truncated_universal_group(symmetric(3), PermGroup.trivial(2), 2)
    a, b = B.ball.children[0]
    bad = PartialIsomorphism(0, 0, 1, {0: 0, a: b, b: a}, {})
    assert not check_partial_isomorphism(B, bad)
    assert check_partial_isomorphism(B, transfer_map(B, 0, 0, 1))


def test_colour_preserving_group_has_regular_behaviour():
    ball = build_ball(3, 2, 4)
    U = colour_preserving_truncation(legal_colouring(ball))
    # only the identity preserves every colour around the centre
    assert U.order() == 1


def test_root_stabiliser_order_is_stable_for_c3_c2():
    # the pointwise stabiliser of the centre's neighbourhood is trivial
    for r in (2, 3, 4, 5):
        B = truncated_universal_group(cyclic(3), symmetric(2), r)
        assert B.order() == 2
        nbhd = [0] + B.ball.children[0]
        assert B.group.pointwise_stabilizer(nbhd).order() == 1


# -- colouring independence ----------------------------------------------------------


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1000), st.integers(0, 1000))
def test_colourings_conjugate(s1, s2):
    ball = build_ball(3, 2, 3)
    L, Lp = random_legal_colouring(ball, s1), random_legal_colouring(ball, s2)
    G1, G2 = symmetric(3), symmetric(2)
    c = colouring_conjugacy(L, Lp, G1, G2)
    assert verify_colouring_conjugacy(L, Lp, G1, G2, c)
    U = truncated_universal_group(G1, G2, 3, colouring=L)
    Up = truncated_universal_group(G1, G2, 3, colouring=Lp)
    assert U.order() == Up.order()
    assert all(Up.contains(g.conjugate(c)) for g in U.generators)


def test_conjugacy_rejects_incompatible_centre_colours():
    G1 = PermGroup([Permutation.parse("(1 2)", 3)], degree=3)
    ball = build_ball(3, 2, 3)
    L = legal_colouring(ball)
    # a colouring whose centre in-colour lies in the other G1-orbit
    Lp = next(c for c in (random_legal_colouring(ball, s) for s in range(100)) if c.kappa[0] != 0)
    with pytest.raises(HypothesisViolation):
        colouring_conjugacy(L, Lp, G1, symmetric(2))


def test_local_action_at_root_and_child():
    B = truncated_universal_group(dihedral(8), symmetric(3), 3)
    assert local_action(B, 0) == symmetric(3)
    child = B.ball.children[0][0]
    assert are_permutation_isomorphic(local_action(B, child), dihedral(8))


# -- fibrelobe clauses -----------------------------------------------------------------


def test_box_fibrelobe_full_group():
    B = truncated_universal_group(symmetric(3), symmetric(2), 3)
    assert box_fibrelobe_check(B, B).all_pass


def test_box_fibrelobe_colour_preserving_fails():
    B = truncated_universal_group(symmetric(3), symmetric(2), 3)
    U = colour_preserving_truncation(B.colouring)
    rep = box_fibrelobe_check(U, B)
    assert not any(rep.as_dict()[k] for k in rep.as_dict() if k != "all_pass")


def test_box_fibrelobe_needs_containment():
    ambient = truncated_universal_group(cyclic(3), symmetric(2), 3)
    S = truncated_universal_group(symmetric(3), symmetric(2), 3)
    with pytest.raises(HypothesisViolation):
        box_fibrelobe_check(S, ambient)
