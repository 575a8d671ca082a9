"""Acceptance suite. Each test carries a ``criterion`` marker; the conftest hook
prints one PASS/FAIL line per criterion at the end of the run.

Run standalone with ``python tests/test_acceptance.py``.
"""

import itertools
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from boxwreath.graphalg import (
    Ends,
    cartesian_graph_product,
    cartesian_power,
    complete_graph,
    ends_estimate,
    gamma_graph,
    lobes_and_bcv_tree,
    orbital_cartesian_lemma_check,
    orbital_graph,
    path_truncation,
)
from boxwreath.permcore import (
    PermGroup,
    Permutation,
    extended_catalog,
    higman_primitivity,
    is_primitive,
    min_subdegree,
    suborbits,
    symmetric,
    transitive_catalog,
)
from boxwreath.products import (
    CartesianDecomposition,
    coordinate_components,
    coordinate_decomposition,
    exhaustive_cartesian_decompositions,
    find_cartesian_decompositions,
    pa_embedding,
    product_action_permutation,
    wr_primitivity_predicate,
    wreath_imprimitive,
    wreath_product_action,
)
from boxwreath.products.wreath import decode, encode
from boxwreath.treebox import (
    build_ball,
    box_point_action,
    colouring_conjugacy,
    local_action_verify,
    random_legal_colouring,
    truncated_universal_group,
    verify_colouring_conjugacy,
)

GOLDEN = Path(__file__).parent / "golden"
TOPS = {name: G for name, G in transitive_catalog(3).items()}  # C2, C3, S3


# -- 1: primitivity of the product action ----------------------------------------------


@pytest.mark.criterion(1)
def test_structural_predicate_agrees_with_block_search():
    start = time.perf_counter()
    disagreements, checked = [], 0
    for (h, H), (f, F) in itertools.product(transitive_catalog(5).items(), TOPS.items()):
        if H.degree**F.degree > 4096:
            continue
        W = wreath_product_action(H, F)
        checked += 1
        if wr_primitivity_predicate(H, F) != bool(is_primitive(W)):
            disagreements.append((h, f))
    elapsed = time.perf_counter() - start
    assert checked == len(transitive_catalog(5)) * len(TOPS)
    assert disagreements == []
    assert elapsed <= 60, elapsed


# -- 2: S3 Wr S2 on nine points ----------------------------------------------------------


@pytest.fixture(scope="module")
def s3_pwr_s2():
    return wreath_product_action(symmetric(3), symmetric(2))


@pytest.mark.criterion(2)
def test_s3_pwr_s2_invariants(s3_pwr_s2):
    G = s3_pwr_s2
    assert (G.degree, G.order()) == (9, 72)
    assert suborbits(G, 0).subdegrees == [1, 4, 4]
    assert is_primitive(G)


@pytest.mark.criterion(2)
def test_s3_pwr_s2_search_matches_exhaustive_oracle(s3_pwr_s2):
    found = find_cartesian_decompositions(s3_pwr_s2)
    oracle = exhaustive_cartesian_decompositions(s3_pwr_s2)
    assert sorted(found, key=repr) == sorted(oracle, key=repr)
    assert coordinate_decomposition(3, 2) in found


def _skew(point: int) -> int:
    # (a, b) -> (a + b, a - b) mod 3
    a, b = decode(point, 3, 2)
    return encode(((a + b) % 3, (a - b) % 3), 3)


@pytest.mark.criterion(2)
def test_s3_pwr_s2_extra_decomposition_is_a_normaliser_image(s3_pwr_s2):
    G = s3_pwr_s2
    t = Permutation([_skew(p) for p in range(9)])
    assert all(G.contains(g.conjugate(t)) for g in G.generators)
    coords = coordinate_decomposition(3, 2)
    image = CartesianDecomposition.of([[[t(p) for p in block] for block in part] for part in coords.partitions])
    assert image != coords
    assert set(find_cartesian_decompositions(G)) == {coords, image}


@pytest.mark.criterion(2)
@pytest.mark.xfail(strict=True, reason="the exhaustive oracle finds two invariant decompositions; see decisions ledger")
def test_s3_pwr_s2_exactly_one_decomposition(s3_pwr_s2):
    assert find_cartesian_decompositions(s3_pwr_s2) == [coordinate_decomposition(3, 2)]


# -- 3: the S3 box S2 truncation at radius 3 ------------------------------------------------


@pytest.mark.criterion(3)
def test_box_truncation_s3_s2():
    start = time.perf_counter()
    B = truncated_universal_group(symmetric(3), symmetric(2), 3)
    for v in B.ball.interior():
        rep = local_action_verify(B, v)
        assert rep.isomorphic, v
    act = box_point_action(B)
    interior_v2 = [v for v in B.ball.vertices_on_side(2) if B.ball.is_interior(v)]
    assert act.is_transitive()
    assert set(interior_v2) <= set(act.points)
    assert act.sd() == 4
    assert min_subdegree(symmetric(3)) == 2
    assert time.perf_counter() - start <= 60


# -- 4: colourings do not matter --------------------------------------------------------------


@pytest.mark.criterion(4)
def test_five_colourings_pairwise_conjugate():
    ball = build_ball(3, 2, 3)
    G1, G2 = symmetric(3), symmetric(2)
    colourings = [random_legal_colouring(ball, seed) for seed in (1, 2, 3, 4, 5)]
    assert len({tuple(L.kappa) for L in colourings}) > 1
    for L, Lp in itertools.permutations(colourings, 2):
        c = colouring_conjugacy(L, Lp, G1, G2)
        assert verify_colouring_conjugacy(L, Lp, G1, G2, c)


# -- 5: block-cut-vertex tree of Gamma(K4, 3) ----------------------------------------------------


@pytest.mark.criterion(5)
def test_bcv_tree_valencies():
    g = gamma_graph(complete_graph(4), 3, 2)
    dec = lobes_and_bcv_tree(g)
    assert dec.check(g)
    tree = dec.bcv_tree
    interior_lobes = [j for j, lobe in enumerate(dec.lobes) if any(v in g.interior() for v in lobe)]
    assert interior_lobes
    assert all(tree.degree(dec.lobe_node(j)) == 4 for j in interior_lobes)
    assert g.interior()
    assert all(tree.degree(v) == 3 for v in g.interior())


# -- 6: ends ---------------------------------------------------------------------------------------


@pytest.mark.criterion(6)
@pytest.mark.parametrize(
    "name, graph, verdict",
    [
        ("K5", lambda: complete_graph(5), Ends.ZERO),
        ("path", lambda: path_truncation(21), Ends.TWO),
        ("P20xP20", lambda: cartesian_graph_product(path_truncation(20), path_truncation(20)), Ends.ONE),
        ("gamma(K3,2)@5", lambda: gamma_graph(complete_graph(3), 2, 5), Ends.MANY),
    ],
)
def test_ends_canonical_suite(name, graph, verdict):
    assert ends_estimate(graph()).verdict == verdict


# -- 7: product-action embedding -------------------------------------------------------------------


@pytest.mark.criterion(7)
def test_embedding_of_s3_pwr_s2(s3_pwr_s2):
    G = s3_pwr_s2
    E = pa_embedding(G, coordinate_components(symmetric(3), 2), 0)
    rep = E.verify()
    assert rep.mode == "exhaustive" and rep.elements_checked == 72
    assert rep.ok, rep
    # the intertwining relation, point by point
    for f in G.elements():
        img = E.phi_hat(f)
        assert all(E.theta(f(w)) == img(E.theta(w)) for w in range(9))
    # the stabiliser and normal-subgroup formulas on generators
    for g in E.G_alpha.generators:
        assert E.phi_hat_stabilizer(g) == E.phi_hat(g)
        hs = E.h_elements(g)
        assert E.phi_hat_stabilizer(g) == product_action_permutation([E.psi(h) for h in hs], E.sigma(g))
    for x in E.M.generators:
        assert E.phi_hat_normal(x) == E.phi_hat(x)


# -- 8: Higman's criterion ---------------------------------------------------------------------------


def _higman_groups() -> dict:
    out = dict(extended_catalog(8))
    out["S2 wr S3"] = wreath_imprimitive(symmetric(2), symmetric(3))
    out["S3 wr S2"] = wreath_imprimitive(symmetric(3), symmetric(2))
    out["S4 wr S2"] = wreath_imprimitive(symmetric(4), symmetric(2))
    out["S2 wr S4"] = wreath_imprimitive(symmetric(2), symmetric(4))
    return out


@pytest.mark.criterion(8)
def test_higman_cross_check():
    groups = _higman_groups()
    kinds = set()
    for name, G in groups.items():
        assert G.degree <= 8 and G.is_transitive(), name
        blocks = bool(is_primitive(G))
        assert blocks == higman_primitivity(G), name
        kinds.add(blocks)
    assert kinds == {True, False}


# -- 9: orbital graph of a power -----------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_orbital_graph_is_cartesian_square():
    rep = orbital_cartesian_lemma_check(symmetric(3), 0, 1, 2)
    assert rep.equal
    assert rep.sigma_edges == rep.product_edges
    W = wreath_product_action(symmetric(3), symmetric(2))
    direct = orbital_graph(W, encode((0, 0), 3), encode((1, 0), 3))
    assert direct == cartesian_power(complete_graph(3), 2)


# -- 10: CLI golden files -------------------------------------------------------------------------------

GOLDEN_COMMANDS = {
    "analyze_pwr.json": ["analyze", "(S(3) pwr S(2))", "--seed", "7"],
    "analyze_box.json": ["analyze", "(S(3) box S(2))@3", "--seed", "7"],
    "ends_gamma.json": ["ends", "gamma(K3,2)@5", "--seed", "7"],
}


def _cli(argv) -> bytes:
    proc = subprocess.run([sys.executable, "-m", "boxwreath", *argv], capture_output=True, check=True)
    return proc.stdout


@pytest.mark.criterion(10)
@pytest.mark.parametrize("name", sorted(GOLDEN_COMMANDS))
def test_cli_golden(name):
    first, second = _cli(GOLDEN_COMMANDS[name]), _cli(GOLDEN_COMMANDS[name])
    assert first == second
    path = GOLDEN / name
    if os.environ.get("BOXWREATH_REGEN_GOLDEN"):
        path.write_bytes(first)
    assert first == path.read_bytes()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
