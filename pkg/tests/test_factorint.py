import random

import pytest

from steinerdet.factorint import factor_integer
from steinerdet.modmat import is_probable_prime


def test_examples():
    f = factor_integer(114688)
    assert f.sign == 1 and f.factors == {2: 14, 7: 1}
    f = factor_integer(127)
    assert f.factors == {127: 1}
    f = factor_integer(-28)
    assert f.sign == -1 and f.factors == {2: 2, 7: 1}
    assert str(f) == "-2^2 * 7"


def test_zero_rejected():
    with pytest.raises(ValueError):
        factor_integer(0)


def test_reconstruction_random():
    rng = random.Random(0)
    for _ in range(10):
        v = rng.randint(2, 10**12) * rng.choice([-1, 1])
        f = factor_integer(v, seed=1)
        assert f.reconstruct() == v
        assert f.composite_remainder is None
        for p in f.factors:
            assert is_probable_prime(p, rounds=40)


def test_semiprime_beyond_trial_division():
    p, q = 1000003, 1000033
    f = factor_integer(p * q)
    assert f.factors == {p: 1, q: 1}


def test_large_table_value():
    # the order-6 three-vertex reference value refactors exactly
    v = 2**14 * 3**16 * 11**4 * 31 * 19231**4
    f = factor_integer(v)
    assert f.factors == {2: 14, 3: 16, 11: 4, 31: 1, 19231: 4}


def test_json():
    j = factor_integer(-12).to_json()
    assert j == {"sign": -1, "factors": {"2": 2, "3": 1}}
