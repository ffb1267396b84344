import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helly_ecc.errors import CapExceededError
from helly_ecc.generators import gen, grid, path
from helly_ecc.oracles import (
    all_ecc_bruteforce,
    center_formula_check,
    center_isometry_check,
    distance_matrix,
    four_point_gap,
    helly_check_equal_radii,
    helly_check_subsets,
    hyperbolicity_exact,
    kappa_exact,
    parameter_inequality_report,
    pseudoconvexity_beta,
    subset_ecc,
    unimodality_check,
)

from .conftest import (
    SMALL_HELLY_SPECS,
    naive_beta,
    naive_delta2,
    naive_distances,
    naive_subset_center,
)

seeds = st.integers(0, 10_000)


def test_distance_matrix_matches_floyd_warshall(two_triangles):
    D = distance_matrix(two_triangles)
    assert D.tolist() == naive_distances(two_triangles)
    assert D.dtype == np.int32


def test_distance_matrix_thread_independent():
    g = gen("king-grid(9,11)").graph
    assert np.array_equal(distance_matrix(g, 1), distance_matrix(g, 8))


def test_bruteforce_examples(p5, k4, king3):
    t = all_ecc_bruteforce(p5)
    assert (t.ecc, t.rad, t.diam, t.center) == ((4, 3, 2, 3, 4), 2, 4, (2,))
    t = all_ecc_bruteforce(k4)
    assert (t.ecc, t.rad, t.diam, t.center) == ((1, 1, 1, 1), 1, 1, (0, 1, 2, 3))
    t = all_ecc_bruteforce(king3)
    assert t.ecc == (2, 2, 2, 2, 1, 2, 2, 2, 2)
    assert (t.rad, t.diam, t.center) == (1, 2, (4,))


def test_subset_ecc_examples(p5, c4):
    rep = subset_ecc(p5, [4, 0])
    assert (rep.M, rep.rad_M, rep.diam_M, rep.center_M) == ((0, 4), 2, 4, (2,))
    full = subset_ecc(p5, range(5))
    t = all_ecc_bruteforce(p5)
    assert (full.ecc_M, full.rad_M, full.diam_M, full.center_M) == (t.ecc, t.rad, t.diam, t.center)
    rep = subset_ecc(c4, range(4))
    assert (rep.rad_M, rep.diam_M) == (2, 2)
    with pytest.raises(ValueError):
        subset_ecc(p5, [])


def test_helly_subsets_examples(p5, c4, k4):
    assert helly_check_subsets(p5).ok
    assert helly_check_subsets(k4).ok
    v = helly_check_subsets(c4)
    assert not v.ok and v.witness == (0, 1, 2, 3)
    rep = subset_ecc(c4, v.witness)
    assert rep.rad_M != (rep.diam_M + 1) // 2


def test_rect_grid_not_helly():
    v = helly_check_subsets(gen("rect-grid(3,3)").graph)
    assert not v.ok
    rep = subset_ecc(gen("rect-grid(3,3)").graph, v.witness)
    assert rep.rad_M != (rep.diam_M + 1) // 2


def test_subset_cap():
    with pytest.raises(CapExceededError, match="--cap-subsets"):
        helly_check_subsets(path(17))
    assert helly_check_subsets(path(17), cap=17).ok


def test_equal_radii_examples(p5, c4):
    assert helly_check_equal_radii(p5, 1).ok
    v = helly_check_equal_radii(c4, 1)
    assert not v.ok and v.witness == (0, 1, 2, 3)
    for g in (p5, c4, gen("rect-grid(3,4)").graph):
        diam = all_ecc_bruteforce(g).diam
        assert helly_check_equal_radii(g, diam).ok
        assert helly_check_equal_radii(g, diam + 3).ok


@pytest.mark.parametrize("spec", SMALL_HELLY_SPECS)
def test_equal_radii_on_helly(spec):
    g = gen(spec).graph
    for k in range(1, all_ecc_bruteforce(g).diam + 1):
        assert helly_check_equal_radii(g, k).ok


def test_checks_on_examples(p5, c4, k4, king3, two_triangles):
    for g in (p5, c4, k4, king3, two_triangles):
        t = all_ecc_bruteforce(g)
        assert unimodality_check(g, t).ok
        assert center_formula_check(g, t).ok
        assert center_isometry_check(g, t).ok
    t = all_ecc_bruteforce(two_triangles)
    assert t.ecc == (4, 4, 3, 2, 3, 4, 4)


def test_checks_detect_failures():
    # fabricated tables exercise the failure paths
    g = path(5)
    t = all_ecc_bruteforce(g)
    fake = type(t)((4, 4, 2, 3, 4), 2, 4, (2,))
    v = unimodality_check(g, fake)
    assert not v.ok and v.witness == (0,)
    assert not center_formula_check(g, fake).ok
    # a center that is not connected inside the graph
    c6 = gen("cycle(6)").graph
    split = type(t)((3,) * 6, 3, 3, (0, 3))
    assert not center_isometry_check(c6, split).ok


def test_delta_examples(c4, king3):
    for spec in ["path(9)", "random-tree(30)", "star(6)"]:
        assert hyperbolicity_exact(gen(spec).graph).delta2 == 0
    h = hyperbolicity_exact(c4)
    assert h.delta == 1
    D = distance_matrix(c4)
    assert four_point_gap(D, *h.witness) == 2
    h = hyperbolicity_exact(king3)
    assert h.delta2 == naive_delta2(naive_distances(king3)) == 2
    assert h.delta == Fraction(1)
    # the four side midpoints induce an isometric 4-cycle
    assert h.witness == (1, 3, 5, 7)
    assert four_point_gap(distance_matrix(king3), *h.witness) == 2


def test_delta_cap():
    with pytest.raises(CapExceededError, match="--cap-quadruples"):
        hyperbolicity_exact(path(20), cap=10)


def test_beta_examples(c4, king3):
    assert pseudoconvexity_beta(gen("random-tree(25)").graph).beta == 0
    b = pseudoconvexity_beta(c4)
    assert b.beta == 1
    assert pseudoconvexity_beta(king3).beta == naive_beta(naive_distances(king3)) == 1


def _verify_beta_witness(g, b):
    D = distance_matrix(g)
    v, r, x, y, z = b.witness
    assert 1 <= r and D[v, x] <= r and D[v, y] <= r and D[v, z] > r
    assert D[x, z] + D[z, y] == D[x, y]
    assert min(D[z, x], D[z, y]) == b.beta


def test_beta_witnesses(c4, king3):
    for g in (c4, king3):
        _verify_beta_witness(g, pseudoconvexity_beta(g))


def test_beta_cap():
    with pytest.raises(CapExceededError):
        pseudoconvexity_beta(path(41))


def test_kappa_examples(p5, k4):
    k = kappa_exact(p5)
    assert k.kappa == 1 and k.violation is None
    D = distance_matrix(p5)
    rad, centre = naive_subset_center(D.tolist(), k.witness)
    assert tuple(centre) == k.center_of_witness
    assert max(D[a, b] for a in centre for b in centre) == 1
    # the set {0, 3} attains it as well
    assert naive_subset_center(D.tolist(), [0, 3])[1] == [1, 2]
    assert kappa_exact(k4).kappa == 1
    assert kappa_exact(path(2)).kappa == 1
    assert kappa_exact(path(1)).kappa == 0


def test_kappa_flags_non_isometric_center(c4):
    k = kappa_exact(c4)
    assert k.violation == (0, 2)


def test_kappa_cap():
    with pytest.raises(CapExceededError):
        kappa_exact(path(15))


def _naive_kappa(d) -> int:
    n = len(d)
    best = 0
    for size in range(1, n + 1):
        for M in itertools.combinations(range(n), size):
            _, centre = naive_subset_center(d, M)
            best = max(best, max(d[a][b] for a in centre for b in centre))
    return best


@pytest.mark.parametrize("spec", ["king-grid(3,3)", "cone(cycle(5))", "block-graph(9)", "caterpillar(3,2)"])
def test_parameters_match_naive(spec):
    g = gen(spec).graph
    d = naive_distances(g)
    assert hyperbolicity_exact(g).delta2 == naive_delta2(d)
    assert pseudoconvexity_beta(g).beta == naive_beta(d)
    assert kappa_exact(g).kappa == _naive_kappa(d)


def test_param_report_examples(king3, k4):
    tree = gen("random-tree(10)").graph
    t = all_ecc_bruteforce(tree)
    rep = parameter_inequality_report(0, 0, kappa_exact(tree).kappa, t, tree.n, distance_matrix(tree))
    assert rep.ok and rep.kappa in (0, 1)
    rep = parameter_inequality_report(0, 0, 1, all_ecc_bruteforce(k4), 4, distance_matrix(k4))
    assert rep.verdicts["kappa <= 2delta+1"]
    assert rep.ok
    D = distance_matrix(king3)
    rep = parameter_inequality_report(2, 1, 2, all_ecc_bruteforce(king3), 9, D)
    assert rep.ok
    assert rep.as_dict()["delta"] == "1"
    # an impossible combination is reported, not raised
    bad = parameter_inequality_report(0, 3, 9, all_ecc_bruteforce(king3), 9, D)
    assert not bad.ok
    assert not bad.verdicts["kappa <= 2delta+1"]


def test_param_report_without_kappa(king3):
    rep = parameter_inequality_report(2, 1, None, all_ecc_bruteforce(king3), 9, distance_matrix(king3))
    assert rep.verdicts["kappa <= 2delta+1"] is None
    assert rep.ok


@given(seeds, st.integers(4, 9))
def test_random_helly_characterizations(seed, n):
    g = gen(f"random-helly-small({n})", seed).graph
    D = distance_matrix(g)
    t = all_ecc_bruteforce(g, D)
    assert t.rad == (t.diam + 1) // 2
    assert unimodality_check(g, t).ok
    assert center_formula_check(g, t).ok
    assert center_isometry_check(g, t, D).ok
    for k in range(1, t.diam + 1):
        assert helly_check_equal_radii(g, k, D=D).ok
    h = hyperbolicity_exact(g, D=D)
    if h.witness is not None:
        assert four_point_gap(D, *h.witness) == h.delta2
    b = pseudoconvexity_beta(g, D=D)
    if b.beta:
        _verify_beta_witness(g, b)
    k = kappa_exact(g, D=D)
    assert k.violation is None
    assert parameter_inequality_report(h.delta2, b.beta, k.kappa, t, g.n, D).ok


@given(seeds, st.integers(4, 8))
def test_delta_matches_naive_scan(seed, n):
    g = gen(f"random-helly-small({n})", seed).graph
    d = naive_distances(g)
    assert hyperbolicity_exact(g).delta2 == naive_delta2(d)
    assert pseudoconvexity_beta(g).beta == naive_beta(d)


def test_known_non_helly_radius_law():
    g = grid(2, 2, king=False)
    t = all_ecc_bruteforce(g)
    assert t.rad != (t.diam + 1) // 2
