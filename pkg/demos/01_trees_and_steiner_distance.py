"""Trees, canonical codes, and Steiner distances.

Walks through enumeration, the relabeling-invariant canonical code, and
the edge-cut characterization of Steiner distance (cross-checked against
the brute-force minimal-connected-subgraph oracle).
"""

import itertools

from steinerdet.trees import (
    Tree,
    canonical_code,
    edge_cut,
    enumerate_trees,
    path_tree,
    star_tree,
)
from steinerdet.steiner import steiner_distance, steiner_distance_oracle

print("== unlabeled tree counts ==")
for n in range(1, 11):
    print(f"  n={n}: {len(enumerate_trees(n, 'unlabeled'))} isomorphism classes")

print("\n== canonical codes are labeling-invariant ==")
a = path_tree(4)                       # 0-1-2-3
b = Tree(4, ((2, 0), (0, 3), (3, 1)))  # same path, scrambled labels
print(f"  path  0-1-2-3     -> {canonical_code(a).hex()}")
print(f"  path  2-0-3-1     -> {canonical_code(b).hex()}")
print(f"  star on 4 vertices -> {canonical_code(star_tree(4)).hex()}")

print("\n== Steiner distance: count separating edge cuts ==")
t = path_tree(5)
for s in [(0, 4), (0, 2, 4), (1, 3), (2, 2, 2)]:
    d = steiner_distance(t, s)
    print(f"  d(path5, {s}) = {d}  (oracle: {steiner_distance_oracle(t, s)})")

print("\n  a multiset's distance depends only on its support:")
print(f"  d(path5, (0,0,4)) = {steiner_distance(t, (0, 0, 4))}"
      f" == d(path5, (0,4)) = {steiner_distance(t, (0, 4))}")

print("\n== edge cuts ==")
for e in t.edges:
    cut = edge_cut(t, e)
    print(f"  removing {e}: {sorted(cut.side_a)} | {sorted(cut.side_b)}")

print("\n== full oracle sweep (n=5, k=3) ==")
bad = 0
for tt in enumerate_trees(5, "unlabeled"):
    for s in itertools.combinations_with_replacement(range(5), 3):
        if steiner_distance(tt, s) != steiner_distance_oracle(tt, s):
            bad += 1
print(f"  disagreements: {bad}")
