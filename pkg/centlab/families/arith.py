from __future__ import annotations

from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def prime_root(n: int, exponent: int) -> int | None:
    """Return the prime ``p`` with ``p**exponent == n``, if there is one."""
    if n < 2:
        return None
    guess = round(n ** (1.0 / exponent))
    for p in (guess - 1, guess, guess + 1):
        if p >= 2 and p**exponent == n and is_prime(p):
            return p
    return None


def order_formula(p: int, i: int, j: int) -> int:
    """Element order of ``x^i y^j`` in either group of order p^4 built on Z_{p^2}."""
    q = p * p
    if not (0 <= i < q and 0 <= j < q):
        raise ValueError(f"exponents must lie in [0, {q}), got ({i}, {j})")
    if i == 0 and j == 0:
        return 1
    if gcd(gcd(i, j), p) == p:
        return p
    return q
