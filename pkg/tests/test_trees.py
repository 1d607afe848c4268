import itertools

import pytest

from steinerdet.trees import (
    SizeLimitError,
    Tree,
    are_isomorphic_bruteforce,
    canonical_code,
    edge_cut,
    enumerate_trees,
    from_graph6,
    parse_tree,
    path_tree,
    star_tree,
    tree_from_prufer,
)


def test_tree_validation():
    Tree(3, ((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        Tree(3, ((0, 1),))  # too few edges
    with pytest.raises(ValueError):
        Tree(3, ((0, 1), (0, 1)))  # duplicate
    with pytest.raises(ValueError):
        Tree(3, ((0, 0), (1, 2)))  # self-loop
    with pytest.raises(ValueError):
        Tree(4, ((0, 1), (2, 3), (0, 1)))  # disconnected + dup


def test_distance_matrix_path():
    t = path_tree(4)
    D = t.distance_matrix()
    assert D[0][3] == 3 and D[1][2] == 1 and D[0][0] == 0
    assert D == [list(r) for r in zip(*D)]  # symmetric


def test_canonical_code_relabel_invariant():
    a = Tree(3, ((0, 1), (1, 2)))
    b = Tree(3, ((0, 1), (0, 2)))  # path with center 0
    assert canonical_code(a) == canonical_code(b)


def test_canonical_code_distinguishes():
    assert canonical_code(path_tree(4)) != canonical_code(star_tree(4))


def test_canonical_code_deterministic():
    codes = {canonical_code(path_tree(2)).code for _ in range(5)}
    assert len(codes) == 1


@pytest.mark.parametrize("n,labeled", [(3, 3), (4, 16), (5, 125), (6, 1296), (8, 262144)])
def test_cayley_counts(n, labeled):
    assert len(enumerate_trees(n, "labeled")) == labeled


# unlabeled counts for n = 1..10 (standard free-tree sequence)
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


@pytest.mark.parametrize("n", range(1, 11))
def test_unlabeled_counts(n):
    assert len(enumerate_trees(n, "unlabeled")) == FREE_TREE_COUNTS[n - 1]


def test_unlabeled_matches_bruteforce_classes():
    # canonical codes agree with brute-force isomorphism classification
    for n in range(2, 7):
        labeled = enumerate_trees(n, "labeled")
        classes = []
        for t in labeled:
            for rep in classes:
                if are_isomorphic_bruteforce(t, rep):
                    break
            else:
                classes.append(t)
        assert len(classes) == len(enumerate_trees(n, "unlabeled"))


def test_enumerate_guard():
    with pytest.raises(SizeLimitError):
        enumerate_trees(11, "labeled")


def test_prufer_roundtrip_count():
    n = 5
    trees = {tree_from_prufer(seq, n).edges
             for seq in itertools.product(range(n), repeat=n - 2)}
    assert len(trees) == 125


def test_edge_cut_partition():
    for t in enumerate_trees(6, "unlabeled"):
        for e in t.edges:
            cut = edge_cut(t, e)
            assert cut.side_a | cut.side_b == set(range(6))
            assert not (cut.side_a & cut.side_b)


def test_edge_cut_examples():
    cut = edge_cut(path_tree(4), (1, 2))
    assert cut.side_a == {0, 1} and cut.side_b == {2, 3}
    cut = edge_cut(star_tree(4), (0, 3))
    assert cut.side_a == {0, 1, 2} and cut.side_b == {3}


def test_edge_cut_bad_edge():
    with pytest.raises(ValueError):
        edge_cut(path_tree(4), (0, 3))


def test_graph6_roundtrip():
    for t in enumerate_trees(7, "unlabeled"):
        assert from_graph6(t.to_graph6()).edges == t.edges


def test_parse_tree_both_formats():
    t = path_tree(3)
    assert parse_tree(t.to_text()).edges == t.edges
    assert parse_tree(t.to_graph6()).edges == t.edges
