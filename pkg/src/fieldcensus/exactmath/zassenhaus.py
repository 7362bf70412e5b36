"""Factorization of monic integer polynomials over Q (Hensel lift + Zassenhaus)."""

from __future__ import annotations

from itertools import combinations
from math import comb, isqrt

from . import modp
from . import polys as P
from .integers import small_primes

_FAST_PRIMES = small_primes(200)


def _symmetric(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _hensel_step(f, g, h, s, t, p, m):
    """Lift f = g h (mod m) to mod m*p, given s g + t h = 1 (mod p)."""
    e = P.sub(f, P.mul(g, h))
    e = [(c // m) % p for c in e]
    te = modp.mul(t, e, p)
    q, dg = modp.divmod_(te, g, p)
    dh = modp.add(modp.mul(s, e, p), modp.mul(q, h, p), p)
    g2 = P.add(g, [m * c for c in dg])
    h2 = P.add(h, [m * c for c in dh])
    mm = m * p
    return [c % mm for c in g2], [c % mm for c in h2]


def _ext_gcd(a, b, p):
    """s, t with s a + t b = 1 over F_p for coprime a, b."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = modp.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, modp.sub(s0, modp.mul(q, s1, p), p)
        t0, t1 = t1, modp.sub(t0, modp.mul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def hensel_lift(f, factors, p, k):
    """Lift monic factors of f mod p to monic factors mod p^k."""
    if len(factors) == 1:
        return [list(f)]
    g = factors[0]
    h = [1]
    for fac in factors[1:]:
        h = modp.mul(h, fac, p)
    s, t = _ext_gcd(g, h, p)
    m = p
    G, H = list(g), list(h)
    mod = p**k
    while m < mod:
        G, H = _hensel_step(f, G, H, s, t, p, m)
        m *= p
    # the quotient f / G is the lift of h; recurse on it
    H = [c % mod for c in H]
    return [G] + _lift_rest(H, factors[1:], p, k)


def _lift_rest(H, factors, p, k):
    if len(factors) == 1:
        return [H]
    return hensel_lift(H, factors, p, k)


def _mignotte(f):
    n = P.degree(f)
    norm = isqrt(sum(c * c for c in f)) + 1
    return max(comb(n, j) for j in range(n + 1)) * norm


def _choose_prime(f):
    best = None
    for p in _FAST_PRIMES:
        if f[-1] % p == 0:
            continue
        fp = modp.reduce(f, p)
        if P.degree(modp.gcd(fp, modp.deriv(fp, p), p)) > 0:
            continue
        facs = modp.factor(fp, p)
        if best is None or len(facs) < len(best[1]):
            best = (p, [g for g, _ in facs])
            if len(facs) <= 2:
                break
    return best


def _factor_squarefree(f):
    n = P.degree(f)
    if n <= 1:
        return [f]
    choice = _choose_prime(f)
    if choice is None:
        raise ArithmeticError("no good prime found")
    p, facs = choice
    if len(facs) == 1:
        return [f]
    bound = 2 * _mignotte(f) + 1
    k = 1
    while p**k < bound:
        k += 1
    mod = p**k
    lifted = hensel_lift(f, facs, p, k)
    result = []
    remaining = list(range(len(lifted)))
    F = list(f)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for sub in combinations(remaining, size):
            g = [1]
            for i in sub:
                g = P.mul(g, lifted[i])
                g = [c % mod for c in g]
            g = P.trim([_symmetric(c, mod) for c in g])
            q = P.exact_div(F, g)
            if q is not None:
                result.append(g)
                F = q
                remaining = [i for i in remaining if i not in sub]
                found = True
                break
        if not found:
            size += 1
    result.append(F)
    return result


def factor_over_Q(f):
    """Irreducible factors (with multiplicity) of a monic integer polynomial."""
    f = P.trim(f)
    if f[-1] != 1:
        raise ValueError("factor_over_Q expects a monic polynomial")
    out = []
    g = P.gcd_poly(f, P.deriv(f))
    if P.degree(g) == 0:
        return sorted(_factor_squarefree(f), key=lambda h: (len(h), h))
    # square part: factor the squarefree part and read off multiplicities
    sqf = P.exact_div(f, g)
    for h in _factor_squarefree(sqf):
        rest = f
        while True:
            q = P.exact_div(rest, h)
            if q is None:
                break
            out.append(h)
            rest = q
    return sorted(out, key=lambda h: (len(h), h))


def _degree_sets_fast_path(f, primes=_FAST_PRIMES[:25]):
    """True if mod-p degree patterns already force irreducibility."""
    n = P.degree(f)
    possible = set(range(1, n))
    for p in primes:
        pat = modp.squarefree_degrees(f, p)
        if pat is None:
            continue
        sums = {0}
        for d in pat:
            sums |= {s + d for s in sums}
        possible &= sums
        if not possible:
            return True
    return False


def is_irreducible_over_Q(f) -> bool:
    """Irreducibility over Q of a monic integer polynomial."""
    f = P.trim(f)
    n = P.degree(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    if not P.is_squarefree(f):
        return False
    if _degree_sets_fast_path(f):
        return True
    return len(factor_over_Q(f)) == 1
