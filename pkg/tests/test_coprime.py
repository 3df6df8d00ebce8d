from math import gcd

import pytest
from hypothesis import given
import hypothesis.strategies as st

from dagg.coprime import coprime_above, prime_bound, sieve_primes


def test_first_primes():
    assert sieve_primes(8) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert sieve_primes(1) == [2]
    p = sieve_primes(25)
    assert len(p) == 25 and p[-1] == 97


def test_sieve_matches_trial_division():
    def is_prime(k):
        return k > 1 and all(k % d for d in range(2, int(k ** 0.5) + 1))
    expected = [k for k in range(2, 2000) if is_prime(k)]
    assert sieve_primes(len(expected)) == expected


def test_prime_bound_covers_prime():
    for count in range(1, 300):
        assert sieve_primes(count)[-1] <= prime_bound(count)


def test_coprime_examples():
    s = coprime_above(3, 10)
    assert s.moduli == (16, 27, 25)
    assert s.primes == (2, 3, 5) and s.exponents == (4, 3, 2)
    assert coprime_above(1, 1).moduli == (2,)
    assert coprime_above(2, 100).moduli == (128, 243)


def test_bad_arguments():
    with pytest.raises(ValueError):
        coprime_above(0, 5)
    with pytest.raises(ValueError):
        coprime_above(2, 0)


@given(st.integers(1, 20), st.integers(1, 10**6))
def test_coprime_invariants(count, C):
    s = coprime_above(count, C)
    assert len(s) == count
    for i, q in enumerate(s.moduli):
        assert q > C
        assert q == s.primes[i] ** s.exponents[i]
        assert s.primes[i] ** (s.exponents[i] - 1) <= C
        assert q <= max(s.sieve_bound, C * C)
        for q2 in s.moduli[i + 1:]:
            assert gcd(q, q2) == 1
    assert coprime_above(count, C) == s
