import itertools

import pytest

from steinerdet.forms import evaluate, forms_equal_pit, partial_derivative
from steinerdet.steiner import (
    SteinerHypermatrix,
    build_hypermatrix,
    forced_candidate,
    gradient_system,
    hypermatrix_from_json,
    multiset_count,
    row_difference_direct,
    row_difference_form,
    steiner_distance,
    steiner_distance_oracle,
    steiner_polynomial,
)
from steinerdet.trees import SizeLimitError, enumerate_trees, path_tree, star_tree


def test_steiner_distance_basics():
    t = path_tree(4)
    assert steiner_distance(t, (0, 3)) == 3
    assert steiner_distance(t, (0, 0, 0)) == 0       # multiset collapses
    assert steiner_distance(t, (0, 1, 3)) == 3
    s = star_tree(5)
    assert steiner_distance(s, (1, 2, 3, 4)) == 4


def test_steiner_distance_matches_pairwise():
    t = path_tree(5)
    D = t.distance_matrix()
    for i, j in itertools.combinations(range(5), 2):
        assert steiner_distance(t, (i, j)) == D[i][j]


def test_oracle_equivalence_small():
    # full sweep lives in the acceptance suite; spot-check here
    for t in enumerate_trees(5, "unlabeled"):
        for s in itertools.combinations_with_replacement(range(5), 3):
            assert steiner_distance(t, s) == steiner_distance_oracle(t, s)


def test_hypermatrix_entries_and_expand():
    t = path_tree(3)
    hm = build_hypermatrix(t, 3)
    assert len(hm.entries) == multiset_count(3, 3)
    arr = hm.expand()
    assert arr[0, 1, 2] == 2 and arr[2, 1, 0] == 2  # symmetric
    assert arr[1, 1, 1] == 0


def test_hypermatrix_json_roundtrip():
    hm = build_hypermatrix(star_tree(4), 3)
    assert hypermatrix_from_json(hm.to_json()) == hm


def test_steiner_polynomial_coefficients():
    # p has multinomial-weighted coefficients: x0*x1 term of k=2 path = 2*d(0,1)
    p = steiner_polynomial(path_tree(3), 2)
    assert p.coefficient((1, 1, 0)) == 2
    assert p.coefficient((1, 0, 1)) == 4  # 2 * d(0,2) = 2*2


def test_gradient_is_scaled_partial():
    # k * g_r == D_r p, the defining relation between the two conventions
    for t in (path_tree(3), star_tree(4)):
        for k in (2, 3, 4):
            p = steiner_polynomial(t, k)
            gs = gradient_system(t, k)
            for r in range(t.v_count):
                assert gs.forms[r].scale(k) == partial_derivative(p, r)


def test_gradient_has_no_own_pure_power():
    # diagonal Steiner distances vanish, so g_r has no x_r^(k-1) term;
    # this is what makes the natural Macaulay pairing degenerate
    gs = gradient_system(path_tree(4), 4)
    for r, g in enumerate(gs.forms):
        m = tuple(3 if i == r else 0 for i in range(4))
        assert g.coefficient(m) == 0


def test_row_difference_closed_form_spot():
    t = path_tree(4)
    for k in (4, 6):
        for e in t.edges:
            desc = row_difference_form(t, k, e)
            for w in range(4):
                direct = row_difference_direct(t, k, e, w)
                assert forms_equal_pit(desc.value_at(w), direct)
                assert desc.value_at(w) == direct


def test_row_difference_sign_convention():
    # entries on the side of the smaller endpoint get the negative sign
    t = path_tree(3)
    desc = row_difference_form(t, 4, (0, 1))
    assert desc.value_at(0).coefficient((2, 0, 0)) == -1
    assert desc.value_at(2).coefficient((0, 0, 2)) == 1


def test_forced_candidate_values():
    assert forced_candidate(path_tree(4)) == [1, 0, 0, 1]
    assert forced_candidate(star_tree(4)) == [-1, 1, 1, 1]
    assert forced_candidate(path_tree(2)) == [1, 1]


def test_forced_candidate_single_edge_gradient():
    # k=4, candidate (1,1): both gradient entries equal 2^(k-1)-1 = 7
    gs = gradient_system(path_tree(2), 4)
    assert [evaluate(g, [1, 1]) for g in gs.forms] == [7, 7]


def test_guards():
    with pytest.raises(SizeLimitError):
        build_hypermatrix(path_tree(3), 9)
    with pytest.raises(SizeLimitError):
        gradient_system(path_tree(3), 1)
    with pytest.raises(ValueError):
        steiner_distance(path_tree(3), ())
    with pytest.raises(ValueError):
        steiner_distance(path_tree(3), (0, 5))
