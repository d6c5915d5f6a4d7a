"""Exact integer helpers: factorization, valuations, orders, self-conjugacy."""

from __future__ import annotations

import math
from functools import lru_cache

Factorization = list[tuple[int, int]]


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` by trial division, primes ascending.

    >>> factorize(92)
    [(2, 2), (23, 1)]
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            r = 0
            while n % d == 0:
                n //= d
                r += 1
            out.append((d, r))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_divisors(n: int) -> list[int]:
    """Distinct primes dividing ``|n|``; empty for 0 and +-1."""
    if n == 0:
        return []
    return [q for q, _ in factorize(abs(n))]


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorize(n)) == 1


def exact_power(q: int, n: int) -> int:
    """Largest ``r`` with ``q**r`` dividing ``n`` (the r in q^r || n)."""
    if n == 0:
        raise ValueError("exact power of 0 is unbounded")
    n = abs(n)
    r = 0
    while n % q == 0:
        n //= q
        r += 1
    return r


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"divisors needs n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mult_order(q: int, w: int) -> int:
    """Least ``j >= 1`` with ``q**j == 1 (mod w)``."""
    if w < 1:
        raise ValueError(f"modulus must be positive, got {w}")
    if math.gcd(q, w) != 1:
        raise ValueError(f"gcd({q}, {w}) != 1, order undefined")
    if w == 1:
        return 1
    x, j = q % w, 1
    while x != 1:
        x = x * q % w
        j += 1
    return j


def strip_factor(q: int, u: int) -> int:
    """The part of ``u`` coprime to ``q``."""
    while u % q == 0:
        u //= q
    return u


@lru_cache(maxsize=None)
def is_self_conjugate(q: int, u: int) -> bool:
    """True iff ``q**j == -1 (mod w)`` for some ``j >= 0``, where ``w`` is
    ``u`` with every factor ``q`` removed.

    For ``w <= 2`` this holds with ``j = 0``. Otherwise -1 is a power of ``q``
    exactly when the order of ``q`` is even and its half-power is -1.
    """
    if u < 1:
        raise ValueError(f"modulus must be positive, got {u}")
    w = strip_factor(q, u)
    if w <= 2:
        return True
    order = mult_order(q, w)
    return order % 2 == 0 and pow(q, order // 2, w) == w - 1
