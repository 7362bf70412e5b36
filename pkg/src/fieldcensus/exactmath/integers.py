"""Integer factorization: trial division, Miller-Rabin, Pollard-Brent rho."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 10**6

# Jaeschke / Sorenson-Webster: these bases are deterministic below 3.3 * 10^24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def small_primes(n: int) -> list[int]:
    return [int(p) for p in primes_up_to(n)]


def _mr_round(n, d, s, a):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, error < 4^-rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES)
    rng = random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(rounds))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def pollard_brent(n: int, budget: int, seed: int = 1):
    """A nontrivial factor of composite n, or None when the budget runs out."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and spent < budget:
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
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


@dataclass
class IntFactorization:
    """|N| = prod(p^e) * cofactor; sign kept separately."""

    sign: int
    factors: list = field(default_factory=list)  # sorted (prime, exponent)
    cofactor: int | None = None

    @property
    def complete(self) -> bool:
        return self.cofactor is None

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        if self.cofactor is not None:
            v *= self.cofactor
        return v

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def _trial_divide(n: int, bound: int):
    found = {}
    limit = min(bound, isqrt(n))
    if limit < 2:
        return found, n
    ps = primes_up_to(bound)
    ps = ps[: np.searchsorted(ps, limit, side="right")]
    if n < 2**63:
        hits = ps[(np.int64(n) % ps) == 0]
    else:
        hits = [p for p in ps.tolist() if n % p == 0]
    for p in hits:
        p = int(p)
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        found[p] = e
    return found, n


def factor_integer(N: int, effort: int = DEFAULT_RHO_BUDGET,
                   trial_bound: int = TRIAL_BOUND) -> IntFactorization:
    """Factor N != 0: trial division, then Pollard-Brent within ``effort`` steps.

    A composite part that resists rho is returned as ``cofactor`` and is never
    reported as prime.
    """
    if N == 0:
        raise ValueError("cannot factor 0")
    return _factor_cached(N, effort, trial_bound)


@lru_cache(maxsize=200_000)
def _factor_cached(N, effort, trial_bound):
    sign = -1 if N < 0 else 1
    n = abs(N)
    found, n = _trial_divide(n, trial_bound)
    pending = []
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < trial_bound * trial_bound or is_probable_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        d = pollard_brent(m, effort, seed=m % 1000003)
        if d is None:
            pending.append(m)
        else:
            stack.extend([d, m // d])
    # a prime found twice through separate rho branches is merged above
    cof = None
    if pending:
        cof = 1
        for m in pending:
            cof *= m
    return IntFactorization(sign, sorted(found.items()), cof)
