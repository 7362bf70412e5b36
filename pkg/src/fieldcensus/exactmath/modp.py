"""Polynomial arithmetic and factorization over prime fields F_p.

Polynomials are coefficient lists, constant term first, entries in [0, p).
"""

from __future__ import annotations

import random
import zlib


def reduce(f, p):
    r = [c % p for c in f]
    while r and r[-1] == 0:
        r.pop()
    return r


def deg(f):
    return len(f) - 1


def monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def add(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    r = list(f)
    for i, c in enumerate(g):
        r[i] = (r[i] + c) % p
    while r and r[-1] == 0:
        r.pop()
    return r


def sub(f, g, p):
    return add(f, [(-c) % p for c in g], p)


def mul(f, g, p):
    if not f or not g:
        return []
    r = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                r[i + j] += a * b
    return reduce(r, p)


def divmod_(a, b, p):
    r = list(a)
    db = deg(b)
    if deg(r) < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (deg(r) - db + 1)
    for s in range(deg(r) - db, -1, -1):
        c = r[s + db] * inv % p
        q[s] = c
        if c:
            for i, bc in enumerate(b):
                r[i + s] = (r[i + s] - c * bc) % p
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def deriv(f, p):
    return reduce([i * f[i] for i in range(1, len(f))], p)


def powmod(base, e, modulus, p):
    result = [1]
    b = rem(base, modulus, p)
    while e:
        if e & 1:
            result = rem(mul(result, b, p), modulus, p)
        e >>= 1
        if e:
            b = rem(mul(b, b, p), modulus, p)
    return result


def _pth_root(f, p):
    # f(x) = g(x^p) over F_p; coefficients are fixed by Frobenius
    return [f[i] for i in range(0, len(f), p)]


def squarefree_decomposition(f, p):
    """Monic f -> list of (squarefree factor, multiplicity)."""
    f = monic(f, p)
    out = []
    _sqf(f, p, 1, out)
    return out


def _sqf(f, p, mult, out):
    if deg(f) < 1:
        return
    df = deriv(f, p)
    if not df:
        _sqf(_pth_root(f, p), p, mult * p, out)
        return
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if deg(z) > 0:
            out.append((monic(z, p), i * mult))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if deg(c) > 0:
        _sqf(_pth_root(c, p), p, mult * p, out)


def distinct_degree(f, p):
    """Squarefree monic f -> list of (product of degree-d irreducibles, d)."""
    out = []
    h = [0, 1]
    d = 0
    x = [0, 1]
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(f, d, p, rng):
    """Split a product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = reduce(a, p)
        if deg(a) < 1:
            continue
        if p == 2:
            t = a
            s = a
            for _ in range(d - 1):
                s = rem(mul(s, s, p), f, p)
                t = add(t, s, p)
            g = gcd(f, t, p)
        else:
            b = powmod(a, (p ** d - 1) // 2, f, p)
            g = gcd(f, sub(b, [1], p), p)
        if 0 < deg(g) < n:
            break
    h = divmod_(f, g, p)[0]
    return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def _seed(f, p):
    return zlib.crc32(repr((p, tuple(f))).encode())


def factor(f, p):
    """Factor f over F_p: sorted list of (monic irreducible, multiplicity).

    Splitting randomness is seeded from (f, p) so the result is reproducible.
    """
    f = reduce(f, p)
    if deg(f) < 1:
        return []
    rng = random.Random(_seed(f, p))
    out = []
    for g, m in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(monic(h, p), d, p, rng):
                out.append((irr, m))
    out.sort(key=lambda fm: (deg(fm[0]), fm[0][::-1], fm[1]))
    return out


def factor_degrees(f, p):
    """Multiset of (degree, multiplicity) of the irreducible factors of f mod p."""
    f = reduce(f, p)
    out = []
    for g, m in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            out.extend([(d, m)] * (deg(h) // d))
    out.sort()
    return out


def squarefree_degrees(f, p):
    """Degree pattern of a squarefree f mod p, or None if f mod p is not squarefree."""
    f = monic(reduce(f, p), p)
    if deg(gcd(f, deriv(f, p), p)) > 0:
        return None
    out = []
    for h, d in distinct_degree(f, p):
        out.extend([d] * (deg(h) // d))
    out.sort()
    return out
