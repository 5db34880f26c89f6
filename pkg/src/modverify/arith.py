"""Small number-theory helpers (sympy for the scalar ones, a numpy sieve for bulk)."""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import divisors as _divisors, factorint, isprime, primerange


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def divisors(n: int) -> list[int]:
    return [int(d) for d in _divisors(n)]


def factor(n: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in factorint(n).items()}


def primes_upto(n: int) -> list[int]:
    return [int(p) for p in primerange(2, n + 1)]


@lru_cache(maxsize=8)
def spf_sieve(n: int) -> np.ndarray:
    """Smallest prime factor table for 0..n."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if spf[p] == 0:
            spf[p] = p
            if p * p <= n:
                blk = spf[p * p :: p]
                blk[blk == 0] = p
    return spf


def multiplicative_table(n: int, prime_power) -> np.ndarray:
    """b_1..b_n for a multiplicative function given prime_power(p, e) (b_0 = 0)."""
    spf = spf_sieve(n)
    out = np.zeros(n + 1, dtype=complex)
    out[1] = 1
    cache: dict = {}
    for m in range(2, n + 1):
        p = int(spf[m])
        q, e = m, 0
        while q % p == 0:
            q //= p
            e += 1
        key = (p, e)
        if key not in cache:
            cache[key] = prime_power(p, e)
        out[m] = out[q] * cache[key]
    return out


def divisor_count(n: int, d: int) -> np.ndarray:
    """d-fold divisor function d_d(m) for m <= n."""
    from math import comb

    return multiplicative_table(n, lambda p, e: comb(e + d - 1, d - 1)).real
