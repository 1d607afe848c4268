"""Exact homogeneous multivariate polynomials over arbitrary-precision integers.

Monomials are dense exponent tuples (one entry per variable).  The global
term order is graded lexicographic with x_0 > x_1 > ... ; within a fixed
degree that is plain descending tuple comparison.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

Monomial = tuple[int, ...]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomials_of_degree(var_count: int, degree: int) -> list[Monomial]:
    """All exponent tuples of the given total degree, graded-lex descending."""
    out: list[Monomial] = []

    def rec(prefix: list[int], remaining: int, pos: int):
        if pos == var_count - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, pos + 1)

    if var_count == 0:
        return [()] if degree == 0 else []
    rec([], degree, 0)
    return out


@dataclass(frozen=True)
class HomogeneousForm:
    var_count: int
    degree: int
    terms: dict[Monomial, int]

    def __post_init__(self):
        if self.var_count < 1:
            raise ValueError("var_count must be positive")
        clean = {}
        for m, c in self.terms.items():
            if c == 0:
                continue
            if len(m) != self.var_count:
                raise ValueError(f"monomial {m} has wrong length")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            if sum(m) != self.degree:
                raise ValueError(f"monomial {m} has degree {sum(m)}, form degree {self.degree}")
            clean[tuple(m)] = c
        object.__setattr__(self, "terms", clean)

    # dict field breaks the generated __hash__/__eq__; compare structurally
    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (
            self.var_count == other.var_count
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.var_count, self.degree, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if self.var_count != other.var_count or self.degree != other.degree:
            raise ValueError("incompatible forms")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return HomogeneousForm(self.var_count, self.degree, terms)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + other.scale(-1)

    def scale(self, a: int) -> "HomogeneousForm":
        return HomogeneousForm(self.var_count, self.degree, {m: a * c for m, c in self.terms.items()})

    def __mul__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if self.var_count != other.var_count:
            raise ValueError("incompatible forms")
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return HomogeneousForm(self.var_count, self.degree + other.degree, terms)

    def shift(self, m: Monomial) -> "HomogeneousForm":
        """Multiply by the monomial m."""
        return HomogeneousForm(
            self.var_count,
            self.degree + sum(m),
            {tuple(a + b for a, b in zip(mm, m)): c for mm, c in self.terms.items()},
        )

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e]
            body = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(body)
            elif c == -1 and factors:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}" if factors else str(c))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def zero_form(var_count: int, degree: int) -> HomogeneousForm:
    return HomogeneousForm(var_count, degree, {})


def variable(var_count: int, i: int) -> HomogeneousForm:
    m = tuple(1 if j == i else 0 for j in range(var_count))
    return HomogeneousForm(var_count, 1, {m: 1})


def linear_form(var_count: int, coeffs: dict[int, int]) -> HomogeneousForm:
    terms = {}
    for i, c in coeffs.items():
        m = tuple(1 if j == i else 0 for j in range(var_count))
        terms[m] = c
    return HomogeneousForm(var_count, 1, terms)


def sum_power(var_count: int, support: set[int] | frozenset[int], power: int) -> HomogeneousForm:
    """(sum_{i in support} x_i)**power, expanded via multinomials."""
    support = sorted(support)
    if power == 0:
        return HomogeneousForm(var_count, 0, {(0,) * var_count: 1})
    terms: dict[Monomial, int] = {}
    for m in monomials_of_degree(len(support), power):
        coef = multinomial(power, m)
        full = [0] * var_count
        for i, e in zip(support, m):
            full[i] = e
        terms[tuple(full)] = coef
    return HomogeneousForm(var_count, power, terms)


def multinomial(n: int, parts: tuple[int, ...]) -> int:
    c = 1
    rem = n
    for p in parts:
        c *= comb(rem, p)
        rem -= p
    return c


def evaluate(f: HomogeneousForm, point) -> Fraction:
    """Exact value of f at a rational point."""
    if len(point) != f.var_count:
        raise ValueError(f"point has {len(point)} coordinates, form has {f.var_count} variables")
    point = [Fraction(x) for x in point]
    total = Fraction(0)
    for m, c in f.terms.items():
        v = Fraction(c)
        for x, e in zip(point, m):
            if e:
                v *= x**e
        total += v
    return total


def partial_derivative(f: HomogeneousForm, r: int) -> HomogeneousForm:
    if not (0 <= r < f.var_count):
        raise ValueError(f"variable index {r} out of range")
    if f.degree == 0:
        return zero_form(f.var_count, 0)
    terms: dict[Monomial, int] = {}
    for m, c in f.terms.items():
        e = m[r]
        if e == 0:
            continue
        m2 = list(m)
        m2[r] = e - 1
        terms[tuple(m2)] = terms.get(tuple(m2), 0) + e * c
    return HomogeneousForm(f.var_count, f.degree - 1, terms)


def forms_equal_pit(
    f: HomogeneousForm, g: HomogeneousForm, trials: int = 8, seed: int = 0
) -> bool:
    """Probabilistic identity test on random integer points.

    Structural comparison is exact and is used directly when both forms
    are small; otherwise f-g is evaluated at `trials` random points drawn
    from a range wide enough for a Schwartz-Zippel soundness margin.
    """
    if f.var_count != g.var_count:
        raise ValueError("incompatible variable counts")
    if f.degree != g.degree:
        # homogeneous forms of different degrees agree only if both vanish
        return f.is_zero() and g.is_zero()
    if len(f.terms) <= 512 and len(g.terms) <= 512:
        return f == g
    rng = random.Random(seed)
    span = max(4 * max(f.degree, g.degree, 1) * max(trials, 1), 16)
    for _ in range(max(trials, 1)):
        pt = [rng.randrange(-span, span + 1) for _ in range(f.var_count)]
        if evaluate(f, pt) != evaluate(g, pt):
            return False
    return True


def random_form(var_count: int, degree: int, seed: int, density: float = 0.6,
                coeff_bound: int = 9) -> HomogeneousForm:
    rng = random.Random(seed)
    terms = {}
    for m in monomials_of_degree(var_count, degree):
        if rng.random() < density:
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                terms[m] = c
    return HomogeneousForm(var_count, degree, terms)


# --- serialization ----------------------------------------------------


def form_to_json(f: HomogeneousForm) -> dict:
    return {
        "vars": f.var_count,
        "degree": f.degree,
        "terms": [
            {"exp": list(m), "coef": str(c)} for m, c in f.sorted_terms()
        ],
    }


def form_from_json(obj: dict) -> HomogeneousForm:
    terms = {tuple(t["exp"]): int(t["coef"]) for t in obj["terms"]}
    return HomogeneousForm(obj["vars"], obj["degree"], terms)


def emit(f: HomogeneousForm) -> str:
    return json.dumps(form_to_json(f))


def parse(s: str) -> HomogeneousForm:
    return form_from_json(json.loads(s))
