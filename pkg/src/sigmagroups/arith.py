"""Small integer helpers: factorisation and pi-parts of orders."""

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple:
    """Prime factorisation as a sorted tuple of (p, e) pairs."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def primes_of(n: int) -> tuple:
    return tuple(p for p, _ in factorize(n))


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == ((n, 1),)


def pi_part(n: int, pi) -> int:
    """Largest divisor of n all of whose prime factors lie in pi."""
    m = 1
    for p, e in factorize(n):
        if p in pi:
            m *= p**e
    return m


def is_pi_number(n: int, pi) -> bool:
    return pi_part(n, pi) == n


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def multiplicative_order(k: int, n: int) -> int:
    """Order of k modulo n; requires gcd(k, n) == 1."""
    if gcd(k, n) != 1:
        raise ValueError(f"{k} is not a unit modulo {n}")
    if n == 1:
        return 1
    x, m = k % n, 1
    while x != 1:
        x = x * k % n
        m += 1
    return m
