"""Labeled trees, enumeration, canonical codes, and edge cuts.

Vertices are always labeled 0..v_count-1.  Trees are immutable after
construction; every operation here is a pure function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

MAX_VERTICES = 10


class SizeLimitError(ValueError):
    """Raised when an input exceeds the supported desk-scale bounds."""


@dataclass(frozen=True)
class Tree:
    v_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.v_count < 1:
            raise ValueError("v_count must be positive")
        norm = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.v_count and 0 <= v < self.v_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if len(self.edges) != self.v_count - 1:
            raise ValueError(
                f"a tree on {self.v_count} vertices needs {self.v_count - 1} edges, "
                f"got {len(self.edges)}"
            )
        # connectivity: n-1 edges + connected <=> tree
        if self.v_count > 1:
            seen = {0}
            stack = [0]
            adj = self.adjacency
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != self.v_count:
                raise ValueError("graph is not connected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.v_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def distance_matrix(self) -> list[list[int]]:
        """All-pairs shortest path distances (BFS from each vertex)."""
        n = self.v_count
        dist = [[0] * n for _ in range(n)]
        for s in range(n):
            row = dist[s]
            seen = [False] * n
            seen[s] = True
            frontier = [s]
            d = 0
            while frontier:
                d += 1
                nxt = []
                for u in frontier:
                    for w in self.adjacency[u]:
                        if not seen[w]:
                            seen[w] = True
                            row[w] = d
                            nxt.append(w)
                frontier = nxt
        return dist

    # --- text formats -------------------------------------------------

    def to_text(self) -> str:
        lines = [f"n {self.v_count}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def to_graph6(self) -> str:
        n = self.v_count
        if n > 62:
            raise SizeLimitError("graph6 emission supported only for n <= 62")
        bits = []
        for j in range(1, n):
            row = set(self.adjacency[j])
            for i in range(j):
                bits.append(1 if i in row else 0)
        while len(bits) % 6:
            bits.append(0)
        chars = [chr(n + 63)]
        for i in range(0, len(bits), 6):
            x = 0
            for b in bits[i : i + 6]:
                x = (x << 1) | b
            chars.append(chr(x + 63))
        return "".join(chars)


def parse_tree(text: str) -> Tree:
    """Parse either the `n <count>` edge-list format or a graph6 string."""
    text = text.strip()
    if text.startswith(">>graph6<<"):
        return from_graph6(text[len(">>graph6<<") :])
    if text.startswith("n ") or text.startswith("n\t"):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        v_count = int(lines[0].split()[1])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
        return Tree(v_count, tuple(edges))
    if "\n" not in text and all(63 <= ord(c) < 127 for c in text) and text:
        return from_graph6(text)
    raise ValueError("unrecognized tree format")


def from_graph6(s: str) -> Tree:
    s = s.strip()
    n = ord(s[0]) - 63
    if not (0 <= n <= 62):
        raise ValueError("only short-form graph6 (n <= 62) is supported")
    need = (n * (n - 1) // 2 + 5) // 6
    data = s[1 : 1 + need]
    if len(data) != need:
        raise ValueError("truncated graph6 string")
    bits = []
    for c in data:
        x = ord(c) - 63
        if not (0 <= x < 64):
            raise ValueError(f"bad graph6 character {c!r}")
        bits.extend((x >> sh) & 1 for sh in range(5, -1, -1))
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Tree(n, tuple(edges))


# --- canonical codes --------------------------------------------------


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes

    def hex(self) -> str:
        return self.code.hex()


def _centers(t: Tree) -> list[int]:
    """Center vertex/vertices by iterated leaf removal."""
    n = t.v_count
    if n == 1:
        return [0]
    deg = [t.degree(v) for v in range(n)]
    alive = n
    layer = [v for v in range(n) if deg[v] == 1]
    removed = [False] * n
    while alive > 2:
        nxt = []
        for v in layer:
            removed[v] = True
            alive -= 1
            for w in t.adjacency[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(v for v in range(n) if not removed[v])


def _rooted_code(t: Tree, root: int) -> bytes:
    """AHU canonical string of the tree rooted at `root`."""

    def rec(v: int, parent: int) -> bytes:
        kids = sorted(rec(w, v) for w in t.adjacency[v] if w != parent)
        return b"(" + b"".join(kids) + b")"

    return rec(root, -1)


def canonical_code(t: Tree) -> CanonicalCode:
    """Relabeling-invariant identifier of the isomorphism class."""
    return CanonicalCode(min(_rooted_code(t, c) for c in _centers(t)))


def are_isomorphic_bruteforce(a: Tree, b: Tree) -> bool:
    """Permutation search; test oracle only (small v_count)."""
    if a.v_count != b.v_count:
        return False
    eb = set(b.edges)
    for perm in itertools.permutations(range(a.v_count)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in eb for u, v in a.edges):
            return True
    return False


# --- enumeration ------------------------------------------------------


def tree_from_prufer(seq: tuple[int, ...], v_count: int) -> Tree:
    deg = [1] * v_count
    for x in seq:
        deg[x] += 1
    edges = []
    import heapq

    leaves = [v for v in range(v_count) if deg[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Tree(v_count, tuple(edges))


def enumerate_trees(v_count: int, mode: str = "unlabeled") -> list[Tree]:
    """All trees on v_count vertices.

    labeled: every Prufer tree, v_count**(v_count-2) of them.
    unlabeled: one representative per isomorphism class, built by leaf
    extension from the classes one vertex smaller, deduplicated by
    canonical code.
    """
    if not (1 <= v_count <= MAX_VERTICES):
        raise SizeLimitError(f"v_count must be in 1..{MAX_VERTICES}, got {v_count}")
    if mode not in ("labeled", "unlabeled"):
        raise ValueError(f"unknown mode {mode!r}")
    if v_count == 1:
        return [Tree(1, ())]
    if v_count == 2:
        return [Tree(2, ((0, 1),))]
    if mode == "labeled":
        return [
            tree_from_prufer(seq, v_count)
            for seq in itertools.product(range(v_count), repeat=v_count - 2)
        ]
    reps = {canonical_code(Tree(2, ((0, 1),))).code: Tree(2, ((0, 1),))}
    for n in range(3, v_count + 1):
        nxt: dict[bytes, Tree] = {}
        for t in reps.values():
            for v in range(t.v_count):
                t2 = Tree(n, t.edges + ((v, n - 1),))
                c = canonical_code(t2).code
                if c not in nxt:
                    nxt[c] = t2
        reps = nxt
    return sorted(reps.values(), key=lambda t: canonical_code(t).code)


# --- edge cuts --------------------------------------------------------


@dataclass(frozen=True)
class EdgeCut:
    edge: tuple[int, int]
    side_a: frozenset[int]
    side_b: frozenset[int]


def edge_cut(t: Tree, e: tuple[int, int]) -> EdgeCut:
    """The two components of t - e; side_a contains the smaller endpoint."""
    a, b = min(e), max(e)
    if (a, b) not in t.edges:
        raise ValueError(f"({a},{b}) is not an edge of the tree")
    side = {a}
    stack = [a]
    while stack:
        u = stack.pop()
        for w in t.adjacency[u]:
            if (u, w) in ((a, b), (b, a)):
                continue
            if w not in side:
                side.add(w)
                stack.append(w)
    other = frozenset(range(t.v_count)) - side
    return EdgeCut((a, b), frozenset(side), other)


def path_tree(n: int) -> Tree:
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    return Tree(n, tuple((0, i) for i in range(1, n)))
