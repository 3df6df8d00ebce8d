"""Primes by sieve and pairwise-coprime prime powers above a threshold."""

from __future__ import annotations

import math
from dataclasses import dataclass


def prime_bound(count: int) -> int:
    """Upper bound K on the count-th prime, clamped to 13 below n = 6.

    Uses p_n <= n (log n + log log n), valid for n >= 6.
    """
    if count < 6:
        return 13
    return max(13, math.ceil(count * (math.log(count) + math.log(math.log(count)))))


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def sieve_primes(count: int) -> list[int]:
    """First ``count`` primes."""
    if count < 1:
        raise ValueError("count must be >= 1")
    limit = prime_bound(count)
    primes = _sieve(limit)
    while len(primes) < count:
        limit *= 2
        primes = _sieve(limit)
    return primes[:count]


@dataclass(frozen=True)
class CoprimeSet:
    threshold: int
    moduli: tuple[int, ...]
    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    sieve_bound: int

    def __len__(self):
        return len(self.moduli)


def coprime_above(count: int, C: int) -> CoprimeSet:
    """``count`` pairwise-coprime integers, each strictly greater than C.

    q_i = p_i ** a_i with p_i the i-th prime and a_i the least exponent
    giving p_i ** a_i > C.  Distinct primes make the set pairwise coprime.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    C = int(C)
    if C < 1:
        raise ValueError("threshold C must be >= 1")
    primes = sieve_primes(count)
    moduli, exps = [], []
    for p in primes:
        a, q = 1, p
        while q <= C:
            q *= p
            a += 1
        moduli.append(q)
        exps.append(a)
    return CoprimeSet(C, tuple(moduli), tuple(primes), tuple(exps), prime_bound(count))
