"""Prime table and trial-division factorization.

Gödel codes only ever involve the first few primes at contiguous indices,
so a growing sieve plus trial division is all that is needed here.
"""

from __future__ import annotations

import bisect
import math
import threading

#: Largest prime index the factorizer will try before giving up.
PRIME_INDEX_CEILING = 10_000

_primes: list[int] = [2, 3, 5, 7, 11, 13]
_lock = threading.Lock()


class FactorLimitExceeded(ValueError):
    """Raised when a number has a prime factor beyond the index ceiling."""


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [n for n in range(limit + 1) if flags[n]]


def _ensure(count: int) -> None:
    if len(_primes) >= count:
        return
    with _lock:
        if len(_primes) >= count:
            return
        n = max(count, 6)
        # Rosser's bound on the n-th prime, valid for n >= 6
        limit = int(n * (math.log(n) + math.log(math.log(n)))) + 10
        _primes[:] = _sieve(limit)


def nth_prime(i: int) -> int:
    """Return the ``i``-th prime, counting from ``nth_prime(1) == 2``."""
    if i < 1:
        raise ValueError(f"prime index must be >= 1, got {i}")
    _ensure(i)
    return _primes[i - 1]


def prime_index(p: int) -> int | None:
    """Index of ``p`` in the prime sequence, or None if ``p`` is not a known prime."""
    _ensure(PRIME_INDEX_CEILING)
    pos = bisect.bisect_left(_primes, p)
    if pos < len(_primes) and _primes[pos] == p:
        return pos + 1
    return None


def factor(n: int, ceiling: int = PRIME_INDEX_CEILING) -> list[tuple[int, int]]:
    """Factor ``n >= 2`` into ``[(prime_index, exponent), ...]``.

    Indices are increasing; the product of ``nth_prime(i) ** e`` over the
    result reconstructs ``n``.  Raises :class:`FactorLimitExceeded` if some
    prime factor lies beyond the ``ceiling``-th prime.

    >>> factor(12)
    [(1, 2), (2, 1)]
    """
    if n < 2:
        raise ValueError(f"factor() needs n >= 2, got {n}")
    _ensure(min(ceiling, PRIME_INDEX_CEILING))
    out: list[tuple[int, int]] = []
    idx = 0
    while n > 1:
        idx += 1
        if idx > ceiling:
            raise FactorLimitExceeded(f"prime factor beyond index {ceiling}")
        p = nth_prime(idx)
        if p * p > n:
            last = prime_index(n)
            if last is None or last > ceiling:
                raise FactorLimitExceeded(f"prime factor {n} beyond index {ceiling}")
            out.append((last, 1))
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((idx, e))
    return out
