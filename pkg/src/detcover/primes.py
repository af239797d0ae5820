"""Segmented sieve of Eratosthenes."""

from __future__ import annotations

import math


def small_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi."""
    lo = max(lo, 2)
    if hi <= lo:
        return []
    base = small_primes(math.isqrt(hi - 1) + 1)
    seg = bytearray([1]) * (hi - lo)
    for q in base:
        start = max(q * q, -(-lo // q) * q)
        if start >= hi:
            continue
        seg[start - lo::q] = bytearray(len(range(start, hi, q)))
    return [lo + i for i, flag in enumerate(seg) if flag]


def primes_from(start, count: int, segment: int = 1 << 16) -> list[int]:
    """The first `count` primes p >= start (start may be a real number)."""
    lo = max(2, math.ceil(start))
    out: list[int] = []
    while len(out) < count:
        out.extend(primes_in_range(lo, lo + segment))
        lo += segment
    return out[:count]


def next_prime(start) -> int:
    return primes_from(start, 1)[0]
