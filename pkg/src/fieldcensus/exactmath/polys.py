"""Dense integer polynomials.

A polynomial is a list of Python ints ``[a_0, a_1, ..., a_n]`` (constant term
first).  The zero polynomial is ``[]``.  Functions never mutate their inputs.
"""

from __future__ import annotations

from math import gcd


class NonSquarefree(ValueError):
    """Raised when an operation needs a squarefree polynomial."""


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def lc(f):
    return f[-1]


def add(f, g):
    if len(f) < len(g):
        f, g = g, f
    r = list(f)
    for i, c in enumerate(g):
        r[i] += c
    return trim(r)


def sub(f, g):
    return add(f, [-c for c in g])


def scale(f, c):
    if c == 0:
        return []
    return [c * a for a in f]


def mul(f, g):
    if not f or not g:
        return []
    r = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                r[i + j] += a * b
    return trim(r)


def deriv(f):
    return trim([i * f[i] for i in range(1, len(f))])


def evaluate(f, x):
    r = 0
    for c in reversed(f):
        r = r * x + c
    return r


def content(f):
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def primitive_part(f):
    if not f:
        return []
    c = content(f)
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def shift(f, c):
    """Return f(x + c) (Taylor shift)."""
    r = list(f)
    n = len(r)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            r[j] += c * r[j + 1]
    return r


def negate_var(f):
    """Return (-1)^n f(-x): monic again when f is monic."""
    n = degree(f)
    s = -1 if n % 2 else 1
    return [s * (c if i % 2 == 0 else -c) for i, c in enumerate(f)]


def pseudo_rem(a, b):
    """lc(b)^(deg a - deg b + 1) * a mod b, computed over Z."""
    r = list(a)
    db = degree(b)
    lb = b[-1]
    e = degree(a) - db + 1
    while r and degree(r) >= db:
        c = r[-1]
        s = degree(r) - db
        r = [x * lb for x in r]
        for i, bc in enumerate(b):
            r[i + s] -= c * bc
        r = trim(r)
        e -= 1
    if e > 0:
        m = lb ** e
        r = [x * m for x in r]
    return r


def divmod_monic(a, b):
    """Quotient and remainder of a by a monic b over Z."""
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(a)
    db = degree(b)
    if degree(r) < db:
        return [], trim(r)
    q = [0] * (degree(r) - db + 1)
    for s in range(degree(r) - db, -1, -1):
        c = r[s + db]
        q[s] = c
        if c:
            for i, bc in enumerate(b):
                r[i + s] -= c * bc
    return trim(q), trim(r[:db])


def exact_div(a, b):
    """a / b over Z when b divides a exactly, else None."""
    if not b:
        raise ZeroDivisionError
    r = list(a)
    db = degree(b)
    lb = b[-1]
    if degree(r) < db:
        return [] if not trim(r) else None
    q = [0] * (degree(r) - db + 1)
    for s in range(degree(r) - db, -1, -1):
        c = r[s + db]
        if c % lb:
            return None
        c //= lb
        q[s] = c
        if c:
            for i, bc in enumerate(b):
                r[i + s] -= c * bc
    if any(r):
        return None
    return trim(q)


def resultant(f, g):
    """Res(f, g) by the subresultant remainder sequence."""
    f, g = trim(f), trim(g)
    if not f or not g:
        return 0
    if degree(f) == 0:
        return f[0] ** degree(g)
    if degree(g) == 0:
        return g[0] ** degree(f)
    a, b = content(f), content(g)
    A = [c // a for c in f]
    B = [c // b for c in g]
    t = a ** degree(g) * b ** degree(f)
    s = 1
    if degree(A) < degree(B):
        A, B = B, A
        if degree(A) % 2 and degree(B) % 2:
            s = -1
    gg, h = 1, 1
    while degree(B) > 0:
        delta = degree(A) - degree(B)
        if degree(A) % 2 and degree(B) % 2:
            s = -s
        R = pseudo_rem(A, B)
        if not R:
            return 0
        A = B
        d = gg * h ** delta
        B = [c // d for c in R]
        gg = A[-1]
        h = gg ** delta // h ** (delta - 1) if delta else h
    da = degree(A)
    h = B[0] ** da // h ** (da - 1) if da else 1
    return s * t * h


def discriminant(f):
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f); exact, sign included."""
    n = degree(f)
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, deriv(f))
    sgn = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(r, f[-1])
    assert rem == 0
    return sgn * q


def gcd_poly(f, g):
    """Primitive gcd of f and g over Q[x] (positive leading coefficient)."""
    a, b = primitive_part(trim(f)), primitive_part(trim(g))
    if not a:
        return b
    if not b:
        return a
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive_part(r)
    return primitive_part(a)


def is_squarefree(f):
    return degree(gcd_poly(f, deriv(f))) == 0


def sturm_sequence(f):
    """Sturm chain of f, each member scaled by a positive rational."""
    seq = [_positive_scaled(f), _positive_scaled(deriv(f))]
    while degree(seq[-1]) > 0:
        a, b = seq[-2], seq[-1]
        e = degree(a) - degree(b) + 1
        r = pseudo_rem(a, b)
        if not r:
            break
        # prem = lc(b)^e * rem; keep the sign of -rem
        if b[-1] > 0 or e % 2 == 0:
            r = [-c for c in r]
        seq.append(_positive_scaled(r))
    return seq


def _positive_scaled(f):
    c = content(f)
    return [a // c for a in f] if c else []


def _variations(signs):
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def count_real_roots(f):
    """Number of distinct real roots of a squarefree f, via a Sturm chain."""
    f = trim(f)
    if degree(f) < 1:
        return 0
    seq = sturm_sequence(f)
    if degree(seq[-1]) > 0:
        raise NonSquarefree("gcd(f, f') is not constant")
    at_pos = [1 if p[-1] > 0 else -1 for p in seq]
    at_neg = [(1 if p[-1] > 0 else -1) * (-1 if degree(p) % 2 else 1) for p in seq]
    return _variations(at_neg) - _variations(at_pos)
