import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup as SymGroup

from boxwreath.errors import CapExceeded, HypothesisViolation
from boxwreath.permcore import (
    PermGroup,
    Permutation,
    alternating,
    cyclic,
    dihedral,
    is_primitive,
    suborbits,
    symmetric,
    transitive_catalog,
)
from boxwreath.products import (
    CartesianDecomposition,
    base_group_product,
    coordinate_components,
    coordinate_decomposition,
    exhaustive_cartesian_decompositions,
    fibre,
    fibrelobe_full_check_wr,
    find_cartesian_decompositions,
    is_cartesian,
    pa_embedding,
    product_action_permutation,
    proper_power_shapes,
    verify_cartesian_decomposition,
    wr_primitivity_predicate,
    wreath_imprimitive,
    wreath_order,
    wreath_product_action,
)
from boxwreath.products.wreath import decode, encode

SMALL = transitive_catalog(4)


def sympy_order(G: PermGroup) -> int:
    return SymGroup([SymPerm(list(g.images)) for g in G.generators]).order()


@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_encode_decode_round_trip(n, m, data):
    coords = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m)))
    assert decode(encode(coords, n), n, m) == coords


def test_product_action_permutation_moves_coordinates():
    a = Permutation.parse("(0 1 2)", 3)
    e = Permutation.identity(3)
    swap = Permutation.parse("(0 1)", 2)
    p = product_action_permutation([a, e], Permutation.identity(2))
    # the base element acts on the first coordinate only
    assert p(encode((0, 2), 3)) == encode((1, 2), 3)
    q = product_action_permutation([e, e], swap)
    assert q(encode((0, 2), 3)) == encode((2, 0), 3)


@pytest.mark.parametrize("g, h", [("S3", "C2"), ("C3", "S3"), ("V4", "C2"), ("D8", "C2"), ("C2", "C3")])
def test_wreath_orders(g, h):
    G, H = transitive_catalog(5)[g], transitive_catalog(5)[h]
    expected = wreath_order(G, H)
    assert expected == G.order() ** H.degree * H.order()
    assert wreath_product_action(G, H).order() == expected == sympy_order(wreath_product_action(G, H))
    assert wreath_imprimitive(G, H).order() == expected == sympy_order(wreath_imprimitive(G, H))


def test_s3_pwr_s2_basics():
    W = wreath_product_action(symmetric(3), symmetric(2))
    assert (W.degree, W.order()) == (9, 72)
    assert suborbits(W, 0).subdegrees == [1, 4, 4]
    assert is_primitive(W)


def test_imprimitive_action_has_blocks():
    W = wreath_imprimitive(symmetric(3), symmetric(2))
    assert W.degree == 6 and W.is_transitive() and not is_primitive(W)


def test_cap_is_enforced():
    with pytest.raises(CapExceeded):
        wreath_product_action(symmetric(5), symmetric(3), cap=100)


def test_base_group_product():
    assert base_group_product(cyclic(3), 2).order() == 9


@pytest.mark.parametrize("g, h", list(itertools.product(sorted(SMALL), ["C2", "S3", "C3"])))
def test_structural_predicate_matches_block_search(g, h):
    G, H = SMALL[g], transitive_catalog(5)[h]
    W = wreath_product_action(G, H)
    assert wr_primitivity_predicate(G, H) == bool(is_primitive(W))


def test_predicate_rejects_intransitive_top():
    F = PermGroup([Permutation.parse("(0 1)", 3)], degree=3)
    assert not wr_primitivity_predicate(symmetric(3), F)


def test_fibre_points():
    pts = fibre(encode((1, 2), 3), 0, 3, 2)
    assert pts == [encode((a, 2), 3) for a in range(3)]


# -- cartesian decompositions ----------------------------------------------------


def test_coordinate_decomposition_is_cartesian():
    dec = coordinate_decomposition(3, 2)
    assert is_cartesian(dec)
    assert (dec.k, dec.m, dec.degree) == (3, 2, 9)


def test_not_cartesian():
    bad = CartesianDecomposition.of([[[0, 1], [2, 3]], [[0, 1], [2, 3]]])
    assert not is_cartesian(bad)


def test_proper_power_shapes():
    assert set(proper_power_shapes(16)) == {(4, 2), (2, 4)}
    assert proper_power_shapes(7) == []


@pytest.mark.parametrize(
    "G",
    [
        wreath_product_action(symmetric(3), symmetric(2)),
        wreath_product_action(cyclic(3), cyclic(2)),
        base_group_product(symmetric(3), 2),
        symmetric(9),
        alternating(4),
        wreath_product_action(symmetric(2), symmetric(3)),
        wreath_product_action(symmetric(2), cyclic(2)),
    ],
)
def test_search_agrees_with_exhaustive_oracle(G):
    found = find_cartesian_decompositions(G)
    oracle = exhaustive_cartesian_decompositions(G)
    assert sorted(found, key=repr) == sorted(oracle, key=repr)
    for dec in found:
        assert verify_cartesian_decomposition(dec, G)


def test_coordinate_decomposition_found_for_power():
    W = wreath_product_action(symmetric(4), symmetric(2))
    assert coordinate_decomposition(4, 2) in find_cartesian_decompositions(W)


# -- product-action embedding ------------------------------------------------------


@pytest.mark.parametrize("H, m", [(symmetric(3), 2), (dihedral(10), 2), (alternating(4), 2), (symmetric(3), 3)])
def test_embedding_verifies(H, m):
    G = wreath_product_action(H, symmetric(m))
    E = pa_embedding(G, coordinate_components(H, m), 0)
    rep = E.verify()
    assert rep.ok, rep


def test_embedding_theta_is_bijective():
    H = symmetric(3)
    G = wreath_product_action(H, symmetric(2))
    E = pa_embedding(G, coordinate_components(H, 2), 0)
    images = {E.theta_point(w) for w in range(G.degree)}
    assert len(images) == G.degree
    assert E.theta_point(0) == (E.gamma, E.gamma)


def test_embedding_rejects_non_commuting_components():
    G = symmetric(4)
    with pytest.raises(HypothesisViolation):
        pa_embedding(G, [symmetric(4), symmetric(4)], 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_phi_hat_is_a_homomorphism(seed):
    H = dihedral(8)
    G = wreath_product_action(H, symmetric(2))
    E = pa_embedding(G, coordinate_components(H, 2), 0)
    rng = random.Random(seed)
    a, b = G.random_element(rng), G.random_element(rng)
    assert E.phi_hat(a * b) == E.phi_hat(a) * E.phi_hat(b)


# -- fibre checks -----------------------------------------------------------------


def test_fibrelobe_full_group_passes():
    H, F = symmetric(3), symmetric(2)
    G = wreath_product_action(H, F)
    assert fibrelobe_full_check_wr(G, H, F).all_pass


def test_fibrelobe_base_group_fails_top_clause():
    H, F = symmetric(3), symmetric(2)
    base = base_group_product(H, 2)
    rep = fibrelobe_full_check_wr(base, H, F)
    assert not rep.all_pass
