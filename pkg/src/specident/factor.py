"""Integer factorization under an effort budget."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# the bases above are a proof of primality below this bound
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = 10**6
    rho_rounds: int = 64
    rho_iterations: int = 1 << 16


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    complete: bool = True

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out


@lru_cache(maxsize=8)
def primes_up_to(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below ~3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int, iterations: int) -> int:
    """One Pollard-Brent run; returns a nontrivial factor or 0 on failure."""
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    m = 128
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        spent += r
        if spent > iterations:
            return 0
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else 0


def factorize(d: int, budget: FactorBudget = FactorBudget(), seed: int = 0) -> Factorization:
    if d < 1:
        raise ValueError("factorize expects d >= 1")
    found: dict[int, int] = {}
    rest = d
    for p in primes_up_to(budget.trial_bound):
        if p * p > rest:
            break
        while rest % p == 0:
            found[p] = found.get(p, 0) + 1
            rest //= p
    # no prime factor <= min(bound, sqrt) remains, so a small enough rest is prime
    if 1 < rest <= budget.trial_bound**2:
        found[rest] = found.get(rest, 0) + 1
        rest = 1

    rng = random.Random(seed)
    unresolved = 1
    stack = [rest] if rest > 1 else []
    rounds = budget.rho_rounds
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = 0
        while not f and rounds > 0:
            rounds -= 1
            f = _brent(m, rng.randrange(1, m - 1), budget.rho_iterations)
        if f:
            stack += [f, m // f]
        else:
            unresolved *= m
    factors = tuple(sorted(found.items()))
    return Factorization(factors, unresolved, unresolved == 1)
