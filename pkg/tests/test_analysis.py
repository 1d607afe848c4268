import numpy as np
import pytest

from steinerdet import analysis
from steinerdet.trees import SizeLimitError, enumerate_trees, path_tree, star_tree


def test_graham_pollak_small():
    rep = analysis.graham_pollak_suite(6)
    assert rep.status == "verified"
    # n=6: all 6 trees, determinant -80
    n6 = [i for i in rep.instances if i["evidence"]["n"] == 6]
    assert len(n6) == 6 and all(i["result"] == -80 for i in n6)
    n2 = [i for i in rep.instances if i["evidence"]["n"] == 2]
    assert n2[0]["result"] == -1


def test_graham_pollak_guard():
    with pytest.raises(SizeLimitError):
        analysis.graham_pollak_suite(11)


def test_parity_even(tmp_path):
    rep = analysis.parity_theorem_check(4, 4, cache_dir=tmp_path)
    assert rep.status == "verified"
    assert len(rep.instances) == 2
    assert all(i["result"] == "nonzero" for i in rep.instances)


def test_parity_odd(tmp_path):
    rep = analysis.parity_theorem_check(3, 4, cache_dir=tmp_path)
    assert rep.status == "verified"
    assert all(i["result"] == "zero" for i in rep.instances)


def test_parity_odd_n2_out_of_scope(tmp_path):
    rep = analysis.parity_theorem_check(3, 2, cache_dir=tmp_path)
    assert rep.status == "verified"
    out = rep.instances[0]["evidence"]["outcome"]
    assert abs(int(out["value"])) == 243
    assert "scope" in rep.instances[0]["evidence"]["note"]


def test_parity_infeasible_pairs_named():
    with pytest.raises(SizeLimitError) as e:
        analysis.parity_theorem_check(6, 6)
    assert "feasible" in str(e.value)


def test_invariance_exact_44(tmp_path):
    rep = analysis.invariance_experiment(4, 4, "exact", cache_dir=tmp_path)
    assert rep.status == "verified"
    vals = {i["result"] for i in rep.instances}
    assert len(vals) == 1


def test_invariance_modular_44(tmp_path):
    rep = analysis.invariance_experiment(4, 4, "modular", seed=3,
                                         min_primes=5, cache_dir=tmp_path)
    assert rep.status == "verified"
    assert len(rep.instances) >= 5


def test_invariance_k2_matches_distance_determinant(tmp_path):
    # k=2 full-gradient Res = 2^n * det(D); invariance holds trivially
    for n in (3, 4, 5):
        want = 2**n * (1 - n) * (-2) ** (n - 2)
        for t in enumerate_trees(n, "unlabeled"):
            assert analysis.linear_case_resultant(t) == want


def test_reference_row_lookup():
    assert analysis.reference_row(4, 2).reconstruct() == -28
    assert analysis.reference_row(2, 4, table_index="nk").reconstruct() == -28
    with pytest.raises(ValueError):
        analysis.reference_row(5, 5)


def test_table_comparison_42(tmp_path):
    rep = analysis.table_comparison(4, 2, cache_dir=tmp_path)
    assert rep.status == "verified"
    ev = rep.instances[0]["evidence"]
    assert ev["obstruction_prime"] == 7
    assert ev["divides_reference"] and ev["divides_computed"]
    assert ev["ratio"] == "1"


def test_row_difference_suite():
    rep = analysis.row_difference_suite(5, 4)
    assert rep.status == "verified"


def test_proof_identity_examples():
    rep = analysis.proof_identity_check(path_tree(3), 4, trials=10, seed=0)
    assert rep.status == "verified"
    rep = analysis.proof_identity_check(star_tree(5), 6, trials=10, seed=0)
    assert rep.status == "verified"
    rep = analysis.proof_identity_check(path_tree(4), 2, trials=10, seed=0)
    assert rep.status == "verified"


def test_forced_candidate_reports():
    rep = analysis.forced_candidate_check(path_tree(4), 4)
    assert rep.status == "verified"
    assert rep.instances[-1]["evidence"]["candidate"] == [1, 0, 0, 1]
    rep = analysis.forced_candidate_check(star_tree(4), 6)
    assert rep.status == "verified"


def test_newton_finds_odd_k_nullvector():
    res = analysis.newton_nullvector(path_tree(3), 5, restarts=30, seed=0)
    assert res.found and res.residual < 1e-10


def test_newton_scale_covariance():
    # rescaling a found point scales the gradient by 2^(k-1)
    res = analysis.newton_nullvector(path_tree(3), 3, restarts=30, seed=0)
    assert res.found
    from steinerdet.analysis import _eval_complex
    from steinerdet.steiner import gradient_system

    gs = gradient_system(path_tree(3), 3)
    r1 = np.array([_eval_complex(g, res.point) for g in gs.forms])
    r2 = np.array([_eval_complex(g, 2 * res.point) for g in gs.forms])
    assert np.max(np.abs(r2 - 4 * r1)) < 1e-8


def test_projective_mismatch():
    p = np.array([1, 1j])
    assert analysis.projective_mismatch(2j * p, p) < 1e-12
    assert analysis.projective_mismatch([1, 0], [0, 1]) > 0.5


def test_report_json_shape():
    rep = analysis.graham_pollak_suite(3)
    j = rep.to_json()
    assert set(j) == {"claim", "params", "status", "instances", "started",
                      "wall_ms", "seed", "versions"}
