"""Segmented sieve of Eratosthenes with bounded memory.

``segments`` is the workhorse: it walks ``[lo, hi)`` windows of a fixed size
and yields the primes in each as a numpy array. ``PrimeTable`` keeps a growing
cache of all primes below a bound for callers (the Euler products) that
revisit the same range many times.
"""

from __future__ import annotations

import math
from collections.abc import Iterator

import numpy as np

from .errors import ResourceError

DEFAULT_SEGMENT = 1 << 18
MAX_LIMIT = 10**9


def simple_sieve(n: int) -> np.ndarray:
    """All primes ``<= n`` from a single (unsegmented) sieve."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def segments(limit: int, start: int = 2, segment_size: int = DEFAULT_SEGMENT,
             max_limit: int = MAX_LIMIT) -> Iterator[tuple[int, int, np.ndarray]]:
    """Yield ``(lo, hi, primes)`` for consecutive windows covering ``[start, limit]``."""
    if limit > max_limit:
        raise ResourceError(f"sieve limit {limit} exceeds configured maximum {max_limit}")
    if limit < start:
        return
    base = simple_sieve(math.isqrt(limit))
    lo = max(start, 2)
    while lo <= limit:
        hi = min(lo + segment_size, limit + 1)
        flags = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            first = max(p * p, -(-lo // p) * p)
            flags[first - lo :: p] = False
        if lo <= 1 < hi:
            flags[: 2 - lo] = False
        yield lo, hi, np.flatnonzero(flags).astype(np.int64) + lo
        lo = hi


def primes_up_to(limit: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[int]:
    """Stream the primes ``<= limit`` in increasing order."""
    for _, _, ps in segments(limit, segment_size=segment_size):
        yield from (int(p) for p in ps)


def prime_count(limit: int) -> int:
    return sum(len(ps) for _, _, ps in segments(limit))


class PrimeTable:
    """Cache of all primes below a bound, extended on demand."""

    def __init__(self):
        self._bound = 1
        self._primes = np.empty(0, dtype=np.int64)

    def upto(self, n: int) -> np.ndarray:
        if n > self._bound:
            new_bound = max(n, 2 * self._bound)
            extra = [ps for _, _, ps in segments(new_bound, start=self._bound + 1)]
            self._primes = np.concatenate([self._primes, *extra])
            self._bound = new_bound
        return self._primes[: np.searchsorted(self._primes, n, side="right")]


PRIMES = PrimeTable()
