"""Steiner distances, hypermatrices, Steiner polynomials, and gradient systems.

The hypermatrix is stored one entry per sorted vertex multiset; tuple-level
multiplicities are reconstructed with multinomial coefficients when forms
are built.  The gradient system follows the convention
g_r(x) = sum over (k-1)-tuples i of d(r, i) x^i, so that k * g_r = D_r p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .forms import (
    HomogeneousForm,
    multinomial,
    sum_power,
)
from .trees import EdgeCut, SizeLimitError, Tree, edge_cut

MAX_ORDER = 8

VertexMultiset = tuple[int, ...]


def _check_multiset(t: Tree, s) -> VertexMultiset:
    s = tuple(sorted(s))
    if not s:
        raise ValueError("vertex multiset must be nonempty")
    if s[0] < 0 or s[-1] >= t.v_count:
        raise ValueError(f"multiset {s} has entries outside 0..{t.v_count - 1}")
    return s


def steiner_distance(t: Tree, s) -> int:
    """Edge count of the minimal subtree spanning the underlying set of s.

    In a tree this equals the number of edges whose removal separates two
    members of the set.
    """
    s = _check_multiset(t, s)
    support = set(s)
    if len(support) == 1:
        return 0
    count = 0
    for e in t.edges:
        cut = _cut_cached(t, e)
        if support & cut.side_a and support & cut.side_b:
            count += 1
    return count


_cut_cache: dict[tuple[int, tuple, tuple[int, int]], EdgeCut] = {}


def _cut_cached(t: Tree, e: tuple[int, int]) -> EdgeCut:
    key = (t.v_count, t.edges, e)
    cut = _cut_cache.get(key)
    if cut is None:
        cut = edge_cut(t, e)
        _cut_cache[key] = cut
    return cut


def steiner_distance_oracle(t: Tree, s) -> int:
    """Brute force: minimum edges over all connected vertex supersets.

    Independent of the edge-cut characterization; desk scale only.
    """
    if t.v_count > 10:
        raise SizeLimitError("oracle supports v_count <= 10")
    s = _check_multiset(t, s)
    support = frozenset(s)
    rest = [v for v in range(t.v_count) if v not in support]
    best = t.v_count  # upper bound; whole tree has v_count-1 edges
    for extra_size in range(len(rest) + 1):
        if extra_size >= best:
            break
        for extra in itertools.combinations(rest, extra_size):
            verts = support | set(extra)
            inner = [e for e in t.edges if e[0] in verts and e[1] in verts]
            # connected iff spanning subtree exists: |inner| == |verts|-1 and connected
            if len(inner) != len(verts) - 1:
                continue
            seen = {next(iter(verts))}
            stack = list(seen)
            adj: dict[int, list[int]] = {v: [] for v in verts}
            for u, v in inner:
                adj[u].append(v)
                adj[v].append(u)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == len(verts):
                best = min(best, len(inner))
    return best


@dataclass(frozen=True)
class SteinerHypermatrix:
    v_count: int
    k: int
    entries: dict[VertexMultiset, int]

    def entry(self, s) -> int:
        return self.entries[tuple(sorted(s))]

    def to_json(self) -> dict:
        return {
            "v_count": self.v_count,
            "k": self.k,
            "entries": [
                {"multiset": list(m), "d": d}
                for m, d in sorted(self.entries.items())
            ],
        }

    def expand(self):
        """Full order-k array (numpy), symmetric by construction."""
        import numpy as np

        arr = np.zeros((self.v_count,) * self.k, dtype=np.int64)
        for idx in itertools.product(range(self.v_count), repeat=self.k):
            arr[idx] = self.entries[tuple(sorted(idx))]
        return arr


def hypermatrix_from_json(obj: dict) -> SteinerHypermatrix:
    entries = {tuple(e["multiset"]): e["d"] for e in obj["entries"]}
    return SteinerHypermatrix(obj["v_count"], obj["k"], entries)


def _guard(t: Tree, k: int):
    if k < 2 or k > MAX_ORDER:
        raise SizeLimitError(f"order k must be in 2..{MAX_ORDER}, got {k}")
    if t.v_count > 10:
        raise SizeLimitError("v_count <= 10 required")


def build_hypermatrix(t: Tree, k: int) -> SteinerHypermatrix:
    _guard(t, k)
    entries = {
        s: steiner_distance(t, s)
        for s in itertools.combinations_with_replacement(range(t.v_count), k)
    }
    return SteinerHypermatrix(t.v_count, k, entries)


def steiner_polynomial(t: Tree, k: int) -> HomogeneousForm:
    """p(x) = sum over all k-tuples of d(tuple) * x^tuple."""
    hm = build_hypermatrix(t, k)
    n = t.v_count
    terms = {}
    for s, d in hm.entries.items():
        if d == 0:
            continue
        m = [0] * n
        for v in s:
            m[v] += 1
        terms[tuple(m)] = multinomial(k, tuple(m)) * d
    return HomogeneousForm(n, k, terms)


@dataclass(frozen=True)
class GradientSystem:
    t: Tree
    k: int
    forms: tuple[HomogeneousForm, ...]  # g_r, degree k-1, one per vertex

    def scaled_by_k(self) -> tuple[HomogeneousForm, ...]:
        """The D_r p convention: k * g_r."""
        return tuple(g.scale(self.k) for g in self.forms)


def gradient_system(t: Tree, k: int) -> GradientSystem:
    """g_r(x) = sum over (k-1)-multisets i of multinomial * d(r, i) * x^i."""
    _guard(t, k)
    n = t.v_count
    forms = []
    for r in range(n):
        terms: dict[tuple[int, ...], int] = {}
        for s in itertools.combinations_with_replacement(range(n), k - 1):
            d = steiner_distance(t, s + (r,))
            if d == 0:
                continue
            m = [0] * n
            for v in s:
                m[v] += 1
            mm = tuple(m)
            terms[mm] = terms.get(mm, 0) + multinomial(k - 1, mm) * d
        forms.append(HomogeneousForm(n, k - 1, terms))
    return GradientSystem(t, k, tuple(forms))


@dataclass(frozen=True)
class RowDifferenceDescriptor:
    """Closed form of the row difference across an edge cut.

    Entries indexed by side_a all equal -(sum_{i in side_a} x_i)^(k-2);
    entries indexed by side_b all equal (sum_{i in side_b} x_i)^(k-2).
    """

    cut: EdgeCut
    k: int
    value_on_a: HomogeneousForm
    value_on_b: HomogeneousForm

    def value_at(self, w: int) -> HomogeneousForm:
        return self.value_on_a if w in self.cut.side_a else self.value_on_b


def row_difference_form(t: Tree, k: int, e: tuple[int, int]) -> RowDifferenceDescriptor:
    """Closed form for S_u - S_{u+1} across the cut at e.

    Stated for even k; the derivation is parity-independent, so odd k >= 3
    is accepted too (callers should flag those results as beyond stated
    scope).
    """
    _guard(t, k)
    if k < 3:
        raise ValueError("row difference descriptor needs k >= 3")
    cut = edge_cut(t, e)
    n = t.v_count
    return RowDifferenceDescriptor(
        cut,
        k,
        sum_power(n, cut.side_a, k - 2).scale(-1),
        sum_power(n, cut.side_b, k - 2),
    )


def row_difference_direct(t: Tree, k: int, e: tuple[int, int], w: int) -> HomogeneousForm:
    """Oracle: entry w of S_u - S_v by expanding over all (k-2)-tuples.

    S_{u,w} = sum over (k-2)-multisets i of multinomial * d(u, w, i) x^i,
    with (u, v) the cut edge ordered so u is the smaller endpoint.
    """
    _guard(t, k)
    u, v = min(e), max(e)
    if (u, v) not in t.edges:
        raise ValueError(f"({u},{v}) is not an edge of the tree")
    n = t.v_count
    terms: dict[tuple[int, ...], int] = {}
    for s in itertools.combinations_with_replacement(range(n), k - 2):
        diff = steiner_distance(t, s + (u, w)) - steiner_distance(t, s + (v, w))
        if diff == 0:
            continue
        m = [0] * n
        for x in s:
            m[x] += 1
        mm = tuple(m)
        terms[mm] = terms.get(mm, 0) + multinomial(k - 2, mm) * diff
    return HomogeneousForm(n, k - 2, terms)


def forced_candidate(t: Tree) -> list[int]:
    """The vector (2 - deg(v))_v at leaf scale 1.

    Any nullvector of the even-order system would have to be proportional
    to this.
    """
    if t.v_count < 2:
        raise ValueError("needs at least 2 vertices")
    return [2 - t.degree(v) for v in range(t.v_count)]


def multiset_count(v_count: int, k: int) -> int:
    return comb(v_count + k - 1, k)
