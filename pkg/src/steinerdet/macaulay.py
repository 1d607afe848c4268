"""Macaulay resultants of square homogeneous systems, exactly.

The numerator matrix is indexed on both sides by the monomials of the
critical degree t = sum(d_i - 1) + 1 in graded-lex order; the row for
monomial m holds the coefficients of (m / x_i^{d_i}) * f_i where i is the
smallest index with x_i^{d_i} | m.  The denominator minor keeps the rows
and columns whose monomial is divisible by x_j^{d_j} for at least two j.
Res = det(numerator) / det(denominator) whenever the denominator minor is
nonsingular.

Steiner gradient systems are structurally degenerate under the natural
"form i owns variable i" pairing (g_i has no x_i^{k-1} term, so the
column x_0^t is identically zero).  Both determinants then vanish for
every tree with n >= 3 regardless of the resultant's value.  Two repairs
are used, in order of cost:

  1. reorder the forms (pair form sigma(i) with variable i).  Any order
     yields a valid Macaulay construction; for equal degrees d the
     resultant changes exactly by sgn(sigma)**(d**(n-1)), which is
     corrected so reported values always refer to the canonical order.
  2. the generalized characteristic polynomial: perturb by tau * x_i^{d_i}
     (for a subset of the forms), interpolate Res(tau) at integer nodes
     where the perturbed denominator is nonsingular, and evaluate at
     tau = 0.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

import numpy as np

from .forms import HomogeneousForm, Monomial, monomials_of_degree
from .modmat import det_exact, det_mod, prime_stream


class InternalConsistencyError(RuntimeError):
    """An exact-arithmetic cross-check failed; indicates a bug, not an input error."""


@dataclass
class MacaulayResultantProblem:
    forms: tuple[HomogeneousForm, ...]
    degrees: tuple[int, ...]
    critical_degree: int
    columns: list[Monomial]
    col_index: dict[Monomial, int]
    row_class: list[int]           # per column monomial: its assigned form index
    non_reduced: list[int]         # column positions divisible by >= 2 of the x_j^{d_j}
    numerator: np.ndarray          # dense int64

    @property
    def n(self) -> int:
        return len(self.forms)

    @property
    def size(self) -> int:
        return len(self.columns)

    def denominator_matrix(self) -> np.ndarray:
        idx = np.array(self.non_reduced, dtype=np.intp)
        if idx.size == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return self.numerator[np.ix_(idx, idx)]

    def perturbed_numerator(self, tau: int, support) -> np.ndarray:
        """Numerator of the system f_i + tau * x_i^{d_i} for i in support."""
        mat = self.numerator.copy()
        for r in range(self.size):
            if self.row_class[r] in support:
                mat[r, r] += tau
        return mat

    def perturbed_denominator(self, tau: int, support) -> np.ndarray:
        mat = self.perturbed_numerator(tau, support)
        idx = np.array(self.non_reduced, dtype=np.intp)
        if idx.size == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return mat[np.ix_(idx, idx)]


def assemble(forms) -> MacaulayResultantProblem:
    forms = tuple(forms)
    n = len(forms)
    if n == 0:
        raise ValueError("need at least one form")
    var_count = forms[0].var_count
    if any(f.var_count != var_count for f in forms):
        raise ValueError("all forms must share the variable count")
    if n != var_count:
        raise ValueError(
            f"square system required: {n} forms in {var_count} variables"
        )
    degrees = tuple(f.degree for f in forms)
    if any(d < 1 for d in degrees):
        raise ValueError("all degrees must be >= 1")
    t = sum(d - 1 for d in degrees) + 1
    columns = monomials_of_degree(n, t)
    col_index = {m: j for j, m in enumerate(columns)}
    row_class = []
    non_reduced = []
    for j, m in enumerate(columns):
        divs = [i for i in range(n) if m[i] >= degrees[i]]
        # degree t guarantees at least one divisor
        row_class.append(divs[0])
        if len(divs) >= 2:
            non_reduced.append(j)
    size = len(columns)
    maxc = max(f.max_abs_coefficient() for f in forms)
    if maxc >= 1 << 60:
        raise ValueError("coefficients too large for the int64 Macaulay matrix")
    mat = np.zeros((size, size), dtype=np.int64)
    for r, m in enumerate(columns):
        i = row_class[r]
        base = list(m)
        base[i] -= degrees[i]
        for mm, c in forms[i].terms.items():
            col = col_index[tuple(a + b for a, b in zip(base, mm))]
            mat[r, col] += c
    return MacaulayResultantProblem(
        forms, degrees, t, columns, col_index, row_class, non_reduced, mat
    )


# --- form-order search ------------------------------------------------


def _perm_parity(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def pairing_sign(perm, degrees) -> int:
    """Sign relating Res(f_perm(0),...,f_perm(n-1)) to Res(f_0,...,f_n-1).

    For equal degrees d the factor is sgn(perm)**(d**(n-1)); validated
    against independent oracles in the test suite.  Mixed degrees never
    occur here.
    """
    if tuple(perm) == tuple(range(len(perm))):
        return 1
    if len(set(degrees)) != 1:
        raise ValueError("pairing sign correction implemented for equal degrees only")
    d = degrees[0]
    n = len(degrees)
    return _perm_parity(perm) ** (d ** (n - 1))


def _candidate_orderings(n: int, seed: int):
    yield tuple(range(n))
    for shift in range(1, n):
        yield tuple((i + shift) % n for i in range(n))
    rng = random.Random(seed)
    seen = set()
    for _ in range(12):
        p = tuple(rng.sample(range(n), n))
        if p not in seen:
            seen.add(p)
            yield p


@dataclass
class _Resolved:
    problem: MacaulayResultantProblem
    perm: tuple[int, ...]
    sign_fix: int
    den: object  # ExactDetResult when exact_den, else None


def _resolve_ordering(forms, seed: int, exact_den: bool) -> _Resolved | None:
    """First form order whose denominator minor is nonsingular, or None."""
    forms = tuple(forms)
    n = len(forms)
    stream = prime_stream(seed ^ 0xC0FFEE)
    screen = [next(stream), next(stream)]
    if len({f.degree for f in forms}) != 1:
        # mixed degrees: no sign law implemented, keep the natural pairing
        candidates = [tuple(range(n))]
    else:
        candidates = _candidate_orderings(n, seed)
    for perm in candidates:
        pr = assemble([forms[perm[i]] for i in range(n)])
        dm = pr.denominator_matrix()
        if dm.shape[0] and all(det_mod(dm, p) == 0 for p in screen):
            continue
        sign_fix = pairing_sign(perm, pr.degrees)
        if not exact_den:
            return _Resolved(pr, perm, sign_fix, None)
        den = det_exact(dm, seed=seed ^ 0x5EED)
        if den.value == 0:
            continue
        return _Resolved(pr, perm, sign_fix, den)
    return None


# --- outcomes ---------------------------------------------------------


@dataclass
class ResultantOutcome:
    mode: str                       # exact | nonzero-witness | zero-certificate
    value: int | None = None
    sign: int | None = None
    prime: int | None = None
    residue: int | None = None
    certificate: dict | None = None
    inconclusive: bool = False
    is_zero: bool | None = None
    primes_used: int = 0
    hadamard_bits: int = 0
    wall_ms: float = 0.0
    normalization: str = "paper-g"
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "primes_used": self.primes_used,
            "hadamard_bits": self.hadamard_bits,
            "wall_ms": round(self.wall_ms, 3),
            "normalization": self.normalization,
        }
        if self.value is not None:
            out["value"] = str(self.value)
            out["sign"] = self.sign
        if self.prime is not None:
            out["prime"] = self.prime
            out["residue"] = self.residue
        if self.certificate is not None:
            out["certificate"] = {k: str(v) for k, v in self.certificate.items()}
        if self.inconclusive:
            out["inconclusive"] = True
        if self.is_zero is not None:
            out["is_zero"] = self.is_zero
        if self.notes:
            out["notes"] = self.notes
        return out


def outcome_from_json(obj: dict) -> ResultantOutcome:
    out = ResultantOutcome(mode=obj["mode"])
    out.primes_used = obj.get("primes_used", 0)
    out.hadamard_bits = obj.get("hadamard_bits", 0)
    out.wall_ms = obj.get("wall_ms", 0.0)
    out.normalization = obj.get("normalization", "paper-g")
    if "value" in obj:
        out.value = int(obj["value"])
        out.sign = obj.get("sign")
    if "prime" in obj:
        out.prime = obj["prime"]
        out.residue = obj["residue"]
    if "certificate" in obj:
        out.certificate = {k: int(v) for k, v in obj["certificate"].items()}
    out.inconclusive = obj.get("inconclusive", False)
    out.is_zero = obj.get("is_zero")
    out.notes = obj.get("notes", [])
    return out


def conversion_factor(n: int, k: int) -> int:
    """Resultant scale factor between the g_r and D_r p = k*g_r conventions."""
    return k ** (n * (k - 1) ** (n - 1))


# --- exact mode -------------------------------------------------------


def resultant_exact(
    problem_or_forms,
    seed: int = 0,
    early_stop: bool = False,
    normalization: str = "paper-g",
) -> ResultantOutcome:
    """Exact integer resultant via CRT determinants of numerator and minor."""
    forms = _as_forms(problem_or_forms)
    t0 = time.perf_counter()
    out = ResultantOutcome(mode="exact", normalization=normalization)
    if early_stop:
        out.notes.append("heuristic: early-terminated CRT, not certified")
    resolved = _resolve_ordering(forms, seed, exact_den=True)
    if resolved is None:
        out.notes.append(
            "all form orderings give a singular denominator minor; "
            "used tau-perturbation path"
        )
        value = _resultant_perturbed(assemble(forms), seed)
    else:
        if resolved.perm != tuple(range(len(forms))):
            out.notes.append(f"form ordering {list(resolved.perm)} (sign corrected)")
        num = det_exact(resolved.problem.numerator, seed=seed, early_stop=early_stop)
        den = resolved.den
        if num.value % den.value != 0:
            raise InternalConsistencyError(
                f"numerator {num.value} not divisible by denominator {den.value}"
            )
        value = resolved.sign_fix * (num.value // den.value)
        out.primes_used = num.primes_used + den.primes_used
        out.hadamard_bits = num.hadamard_bits
    out.value = value
    out.sign = 0 if value == 0 else (1 if value > 0 else -1)
    out.is_zero = value == 0
    out.wall_ms = (time.perf_counter() - t0) * 1000
    return out


def resultant_nonzero_witness(
    problem_or_forms,
    seed: int = 0,
    attempts: int = 8,
    normalization: str = "paper-g",
) -> ResultantOutcome:
    """Sound nonzero certificate: a prime where num/den is well-defined and nonzero.

    A nonzero denominator residue proves det(denominator) != 0 over the
    integers, so the ratio identity holds exactly and a nonzero numerator
    residue proves the resultant is nonzero.  Failure is inconclusive,
    never a zero claim.
    """
    forms = _as_forms(problem_or_forms)
    t0 = time.perf_counter()
    out = ResultantOutcome(mode="nonzero-witness", normalization=normalization)
    resolved = _resolve_ordering(forms, seed, exact_den=False)
    if resolved is None:
        out.inconclusive = True
        out.notes.append("all form orderings give a singular denominator minor")
        out.wall_ms = (time.perf_counter() - t0) * 1000
        return out
    if resolved.perm != tuple(range(len(forms))):
        out.notes.append(f"form ordering {list(resolved.perm)}")
    den_mat = resolved.problem.denominator_matrix()
    stream = prime_stream(seed)
    for _ in range(attempts):
        p = next(stream)
        out.primes_used += 1
        dn = det_mod(den_mat, p)
        if dn == 0:
            continue
        nm = det_mod(resolved.problem.numerator, p)
        if nm == 0:
            continue
        out.prime = p
        out.residue = nm * pow(dn, -1, p) % p
        out.is_zero = False
        out.wall_ms = (time.perf_counter() - t0) * 1000
        return out
    out.inconclusive = True
    out.wall_ms = (time.perf_counter() - t0) * 1000
    return out


def resultant_zero_certify(
    problem_or_forms,
    seed: int = 0,
    normalization: str = "paper-g",
) -> ResultantOutcome:
    """Exact zero certificate, or the (nonzero) exact value.

    Both determinants are taken to the full Hadamard bound; if every form
    ordering leaves the denominator minor singular, the resultant itself
    is interpolated through the tau-perturbation and tested at tau = 0.
    """
    forms = _as_forms(problem_or_forms)
    t0 = time.perf_counter()
    out = ResultantOutcome(mode="zero-certificate", normalization=normalization)
    resolved = _resolve_ordering(forms, seed, exact_den=True)
    if resolved is not None:
        if resolved.perm != tuple(range(len(forms))):
            out.notes.append(f"form ordering {list(resolved.perm)} (sign corrected)")
        num = det_exact(resolved.problem.numerator, seed=seed)
        den = resolved.den
        out.primes_used = num.primes_used + den.primes_used
        out.hadamard_bits = num.hadamard_bits
        if num.value == 0:
            out.is_zero = True
            out.certificate = {"numerator": 0, "denominator": den.value}
        else:
            if num.value % den.value != 0:
                raise InternalConsistencyError(
                    f"numerator {num.value} not divisible by denominator {den.value}"
                )
            out.is_zero = False
            out.value = resolved.sign_fix * (num.value // den.value)
            out.sign = 1 if out.value > 0 else -1
            out.notes.append("not-zero: exact value attached")
    else:
        out.notes.append(
            "all form orderings give a singular denominator minor; "
            "used tau-perturbation path"
        )
        value = _resultant_perturbed(assemble(forms), seed)
        if value == 0:
            out.is_zero = True
            out.certificate = {"perturbed_resultant_at_0": 0}
        else:
            out.is_zero = False
            out.value = value
            out.sign = 1 if value > 0 else -1
    out.wall_ms = (time.perf_counter() - t0) * 1000
    return out


def _as_forms(problem_or_forms) -> tuple[HomogeneousForm, ...]:
    if isinstance(problem_or_forms, MacaulayResultantProblem):
        return problem_or_forms.forms
    return tuple(problem_or_forms)


# --- generalized characteristic polynomial (tau-perturbation) ---------


def _resultant_perturbed(problem: MacaulayResultantProblem, seed: int) -> int:
    """Resultant via interpolation of Res(tau) for f_i + tau x_i^{d_i}.

    Perturbing a subset S of the forms bounds deg Res(tau) by
    sum_{i in S} prod_{j != i} d_j, so single-form supports are tried
    first (fewest interpolation nodes); the all-form support is the
    guaranteed fallback since it makes both determinants monic in tau.
    Res(tau) at tau = 0 is the resultant of the unperturbed system.
    """
    degs = problem.degrees
    n = problem.n
    supports = [(i,) for i in range(n)] + [tuple(range(n))]
    for support in supports:
        bound = sum(prod(degs[j] for j in range(n) if j != i) for i in support)
        nodes = _perturbation_nodes(problem, support, bound + 1, seed)
        if nodes is None:
            continue
        return _lagrange_at_zero(nodes)
    raise InternalConsistencyError("all-form perturbation failed to find nodes")


def _perturbation_nodes(problem, support, count, seed) -> list[tuple[int, int]] | None:
    """(tau, Res(tau)) samples at integer tau with nonsingular denominator.

    Returns None if the perturbed denominator looks identically singular
    (no usable tau among a generous search range).
    """
    pts: list[tuple[int, int]] = []
    limit = 3 * count + problem.size
    for tau in range(1, limit + 1):
        den_mat = problem.perturbed_denominator(tau, support)
        den = det_exact(den_mat, seed=seed ^ tau)
        if den.value == 0:
            if not pts and tau >= 8:
                return None  # likely deg den(tau) == 0 identically for this support
            continue
        num = det_exact(problem.perturbed_numerator(tau, support), seed=seed ^ (tau << 8))
        if num.value % den.value != 0:
            raise InternalConsistencyError("perturbed ratio not integral")
        pts.append((tau, num.value // den.value))
        if len(pts) >= count:
            return pts
    return None


def _lagrange_at_zero(pts: list[tuple[int, int]]) -> int:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(pts):
        term = Fraction(yi)
        for j, (xj, _) in enumerate(pts):
            if i != j:
                term *= Fraction(-xj, xi - xj)
        total += term
    if total.denominator != 1:
        raise InternalConsistencyError("perturbation interpolation is not integral")
    return int(total)


# --- independent oracles for two-variable systems ---------------------


def sylvester_matrix(f: HomogeneousForm, g: HomogeneousForm) -> list[list[int]]:
    """Classical Sylvester matrix of two binary forms (in x0, x1)."""
    if f.var_count != 2 or g.var_count != 2:
        raise ValueError("Sylvester oracle is for binary forms")
    m, l = f.degree, g.degree
    fc = [f.coefficient((m - i, i)) for i in range(m + 1)]
    gc = [g.coefficient((l - i, i)) for i in range(l + 1)]
    size = m + l
    rows = []
    for s in range(l):
        rows.append([0] * s + fc + [0] * (size - s - m - 1))
    for s in range(m):
        rows.append([0] * s + gc + [0] * (size - s - l - 1))
    return rows


def sylvester_resultant(f: HomogeneousForm, g: HomogeneousForm) -> int:
    from .modmat import bareiss_det

    return bareiss_det(sylvester_matrix(f, g))


def euclid_resultant(f: HomogeneousForm, g: HomogeneousForm) -> Fraction:
    """Euclidean-recursion resultant of two binary forms, exact rationals.

    Independent of both the Macaulay and the Sylvester matrix routes.
    Requires nonzero leading coefficients in x0 (no root at infinity),
    which is the only case the tests feed it.
    """
    if f.var_count != 2 or g.var_count != 2:
        raise ValueError("Euclid oracle is for binary forms")
    if f.coefficient((f.degree, 0)) == 0 or g.coefficient((g.degree, 0)) == 0:
        raise ValueError("Euclid oracle needs nonzero leading x0 coefficients")

    def coeffs(h: HomogeneousForm) -> list[Fraction]:
        # as a univariate polynomial in x0 with x1 = 1, high degree first
        return [Fraction(h.coefficient((h.degree - i, i))) for i in range(h.degree + 1)]

    def deg(p: list[Fraction]) -> int:
        return len(p) - 1

    def trim(p: list[Fraction]) -> list[Fraction]:
        i = 0
        while i < len(p) - 1 and p[i] == 0:
            i += 1
        return p[i:]

    def polymod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        a = a[:]
        db, lb = deg(b), b[0]
        while deg(a) >= db and any(c != 0 for c in a):
            if a[0] != 0:
                factor = a[0] / lb
                for i in range(len(b)):
                    a[i] -= factor * b[i]
            a = a[1:] if a[0] == 0 else trim(a)
        return trim(a) if a else [Fraction(0)]

    def res(a: list[Fraction], b: list[Fraction]) -> Fraction:
        da, db = deg(a), deg(b)
        if all(c == 0 for c in b):
            return Fraction(0)
        if db == 0:
            return b[0] ** da
        r = polymod(a, b)
        if all(c == 0 for c in r):
            return Fraction(0)
        dr = deg(r)
        return Fraction((-1) ** (da * db)) * b[0] ** (da - dr) * res(b, r)

    return res(trim(coeffs(f)), trim(coeffs(g)))
