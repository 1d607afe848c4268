"""Complete integer factorization: trial division, Brent's rho, SPP certification."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .modmat import is_probable_prime

_TRIAL_LIMIT = 100_000
_MAX_HARD_BITS = 120


@dataclass
class Factorization:
    sign: int
    factors: dict[int, int] = field(default_factory=dict)
    composite_remainder: int | None = None

    def reconstruct(self) -> int:
        v = self.sign
        for p, e in self.factors.items():
            v *= p**e
        if self.composite_remainder is not None:
            v *= self.composite_remainder
        return v

    def __str__(self):
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(self.factors.items())]
        if self.composite_remainder is not None:
            parts.append(f"C{self.composite_remainder}")
        body = " * ".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + body

    def to_json(self) -> dict:
        out = {
            "sign": self.sign,
            "factors": {str(p): e for p, e in sorted(self.factors.items())},
        }
        if self.composite_remainder is not None:
            out["composite_remainder"] = str(self.composite_remainder)
        return out


def _pollard_brent(n: int, rng: random.Random, max_steps: int = 1 << 22) -> int | None:
    """A nontrivial factor of composite odd n (Brent's cycle variant).

    Returns None if the step budget is exhausted (caller reports a
    composite remainder).
    """
    if n % 2 == 0:
        return 2
    steps = 0
    while steps < max_steps:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and steps < max_steps:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            steps += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor_integer(value: int, seed: int = 0) -> Factorization:
    """Factor a nonzero integer; every reported prime is SPP-certified.

    A remaining cofactor with no factor found beyond ~120 bits is reported
    as a composite remainder rather than looping forever.
    """
    if value == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if value > 0 else -1
    n = abs(value)
    rng = random.Random(seed)
    fact = Factorization(sign)
    for p in range(2, _TRIAL_LIMIT):
        if p * p > n:
            break
        while n % p == 0:
            fact.factors[p] = fact.factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m, rounds=40, seed=seed):
            fact.factors[m] = fact.factors.get(m, 0) + 1
            continue
        budget = 1 << 22 if m.bit_length() <= _MAX_HARD_BITS else 1 << 18
        d = _pollard_brent(m, rng, max_steps=budget)
        if d is None:
            if fact.composite_remainder is None:
                fact.composite_remainder = m
            else:
                fact.composite_remainder *= m
            continue
        stack.append(d)
        stack.append(m // d)
    return fact
