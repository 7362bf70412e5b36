"""Compiled inner loop of the Hunter search.

Everything here works on int64/float64 arrays so numba can compile it.  The
kernel only discards polynomials that provably cannot generate a field in the
job; anything it cannot decide cheaply is passed through with a flag.
"""

import math

import numba as nb
import numpy as np

# two primes below 2^31; their product exceeds 2^62
P1 = 2147483647
P2 = 2147483629
CRT_SAFE = 1.0e18

FLAG_EXACT_DISC = 1      # column n holds the exact discriminant
FLAG_UNSURE_SIGNATURE = 2
FLAG_IRREDUCIBLE = 4     # proven irreducible by mod-p degree patterns


@nb.njit(cache=True)
def _aberth(a, n, z):
    """Roots of x^n + a[n-1] x^(n-1) + ... + a[0] into z; False if not converged."""
    bound = 0.0
    for i in range(n):
        v = abs(a[i])
        if v > bound:
            bound = v
    r = 0.5 * (1.0 + bound)
    for k in range(n):
        ang = 2.0 * math.pi * k / n + 0.4 / n
        z[k] = complex(r * math.cos(ang), r * math.sin(ang))
    for _ in range(500):
        moved = 0.0
        for i in range(n):
            zi = z[i]
            v = 1.0 + 0.0j
            d = 0.0 + 0.0j
            for k in range(n - 1, -1, -1):
                d = d * zi + v
                v = v * zi + a[k]
            if v == 0:
                continue
            ratio = v / d if d != 0 else 1e-12 + 0j
            s = 0.0 + 0.0j
            for j in range(n):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            w = ratio / (1.0 - ratio * s)
            z[i] = zi - w
            aw = abs(w)
            if aw > moved:
                moved = aw
        if moved <= 1e-14 * (1.0 + r):
            return True
    return False


@nb.njit(cache=True)
def _roots(a, n, z):
    if _aberth(a, n, z):
        return
    C = np.zeros((n, n), np.complex128)
    for i in range(n - 1):
        C[i + 1, i] = 1.0
    for i in range(n):
        C[i, n - 1] = -a[i]
    ev = np.linalg.eigvals(C)
    for i in range(n):
        z[i] = ev[i]


@nb.njit(cache=True)
def _mulmod(x, y, p):
    return (x * y) % p


@nb.njit(cache=True)
def _powmod(b, e, p):
    r = 1
    b %= p
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


@nb.njit(cache=True)
def _disc_mod(a, n, p, H, s):
    """disc of the monic polynomial mod p, as det of the power-sum Hankel matrix."""
    s[0] = n % p
    for k in range(1, 2 * n - 1):
        acc = 0
        if k <= n:
            for i in range(1, k):
                acc = (acc + (a[n - i] % p) * s[k - i]) % p
            acc = (acc + k * (a[n - k] % p)) % p
        else:
            for i in range(1, n + 1):
                acc = (acc + (a[n - i] % p) * s[k - i]) % p
        s[k] = (p - acc) % p
    for i in range(n):
        for j in range(n):
            H[i, j] = s[i + j]
    det = 1
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if H[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(n):
                tmp = H[c, j]
                H[c, j] = H[piv, j]
                H[piv, j] = tmp
            det = (p - det) % p
        det = (det * H[c, c]) % p
        inv = _powmod(H[c, c], p - 2, p)
        for r in range(c + 1, n):
            if H[r, c] != 0:
                f = (H[r, c] * inv) % p
                for j in range(c, n):
                    H[r, j] = (H[r, j] - f * H[c, j]) % p
    return det


@nb.njit(cache=True)
def _core_at_most(D, X, primes):
    """True iff D / (largest square dividing D) <= X, for 0 < D < 2^62."""
    c = 1
    R = D
    done = False
    for idx in range(primes.shape[0]):
        q = primes[idx]
        if q * q * q > R:
            done = True
            break
        if R % q == 0:
            e = 0
            while R % q == 0:
                R //= q
                e += 1
            if e & 1:
                c *= q
                if c > X:
                    return False
        if c * R <= X:
            return True
    if not done:
        return True  # prime table exhausted, cannot decide here
    r = np.int64(math.sqrt(R))
    while r * r > R:
        r -= 1
    while (r + 1) * (r + 1) <= R:
        r += 1
    if r * r == R:
        return c <= X
    return c * R <= X


@nb.njit(cache=True)
def scan_prefix(n, t, a2, T, lo, hi, deep, X, sig_ok, primes, out, flags, prune_disc):
    """Enumerate a_{n-3}..a_0 for the fixed prefix (a_{n-1}, a_{n-2}) = (-t, a2).

    Survivors are written to ``out`` (columns a_0..a_{n-1}, then the exact
    discriminant when known).  Returns (#survivors, #leaves visited); when
    #survivors exceeds the buffer the caller retries with a larger one.
    """
    a = np.zeros(n, np.int64)
    af = np.zeros(n, np.float64)
    a[n - 1] = -t
    if n >= 2:
        a[n - 2] = a2
    s = np.zeros(n + 1, np.float64)
    s[1] = t
    if n >= 2:
        s[2] = t * t - 2.0 * a2
    z = np.zeros(n, np.complex128)
    H = np.zeros((n, n), np.int64)
    ps = np.zeros(2 * n, np.int64)
    cur_hi = np.zeros(n + 1, np.int64)
    tol = T * (1.0 + 1e-9) + 1e-9
    cnt = 0
    leaves = 0
    k = 3
    fresh = True
    while True:
        if k > n:
            # leaf: all coefficients fixed
            leaves += 1
            k -= 1
            fresh = False
            if a[0] == 0:
                continue
            for i in range(n):
                af[i] = a[i]
            _roots(af, n, z)
            t2 = 0.0
            for i in range(n):
                t2 += z[i].real * z[i].real + z[i].imag * z[i].imag
            if t2 > tol:
                continue
            nreal = 0
            unsure = False
            for i in range(n):
                sc = 1.0 + abs(z[i])
                ai = abs(z[i].imag)
                if ai < 1e-8 * sc:
                    nreal += 1
                elif ai < 1e-5 * sc:
                    unsure = True
            flag = 0
            if unsure:
                flag |= FLAG_UNSURE_SIGNATURE
            elif not sig_ok[nreal]:
                continue
            dest = 1.0
            for i in range(n):
                for j in range(i + 1, n):
                    dd = abs(z[i] - z[j])
                    dest *= dd * dd
            exact = 0
            if dest < CRT_SAFE:
                r1 = _disc_mod(a, n, P1, H, ps)
                r2 = _disc_mod(a, n, P2, H, ps)
                inv = _powmod(P1 % P2, P2 - 2, P2)
                m = ((r2 - r1 % P2) % P2 * inv) % P2
                D = r1 + P1 * m
                M = P1 * P2
                if D > M // 2:
                    D -= M
                if D == 0:
                    continue
                if prune_disc and not unsure:
                    if not _core_at_most(abs(D), X, primes):
                        continue
                exact = D
                flag |= FLAG_EXACT_DISC
            if irreducible_by_patterns(a, n, SMALL_PRIMES):
                flag |= FLAG_IRREDUCIBLE
            if cnt < out.shape[0]:
                for i in range(n):
                    out[cnt, i] = a[i]
                out[cnt, n] = exact
                flags[cnt] = flag
            cnt += 1
            continue
        if k < 3:
            break
        if fresh:
            lo_k = lo[k]
            hi_k = hi[k]
            if deep:
                R = 0.0
                for i in range(1, k):
                    R += a[n - i] * s[k - i]
                B = T ** (k / 2.0)
                l2 = math.ceil((-B - R) / k - 1e-9)
                h2 = math.floor((B - R) / k + 1e-9)
                if l2 > lo_k:
                    lo_k = l2
                if h2 < hi_k:
                    hi_k = h2
            cur_hi[k] = hi_k
            a[n - k] = lo_k - 1
            fresh = False
        a[n - k] += 1
        if a[n - k] > cur_hi[k]:
            k -= 1
            continue
        R = 0.0
        for i in range(1, k):
            R += a[n - i] * s[k - i]
        s[k] = -R - k * a[n - k]
        k += 1
        fresh = True
    return cnt, leaves


# ---- polynomials over F_p for the irreducibility fast path ----
# arrays hold coefficients constant-first; degree tracked explicitly

@nb.njit(cache=True)
def _pdeg(f, d):
    while d >= 0 and f[d] == 0:
        d -= 1
    return d


@nb.njit(cache=True)
def _prem(a, da, b, db, p):
    """a <- a mod b in place (b with degree db >= 0); returns new degree of a."""
    inv = _powmod(b[db], p - 2, p)
    da = _pdeg(a, da)
    while da >= db:
        c = (a[da] * inv) % p
        off = da - db
        for i in range(db + 1):
            a[off + i] = (a[off + i] - c * b[i]) % p
        da = _pdeg(a, da - 1)
    return da


@nb.njit(cache=True)
def _pgcd(a, da, b, db, p, tmp):
    """gcd of copies; result left in tmp, returns its degree (-1 for zero)."""
    x = a.copy()
    y = b.copy()
    dx = _pdeg(x, da)
    dy = _pdeg(y, db)
    while dy >= 0:
        dx = _prem(x, dx, y, dy, p)
        x, y = y, x
        dx, dy = dy, dx
    for i in range(tmp.shape[0]):
        tmp[i] = 0
    for i in range(dx + 1):
        tmp[i] = x[i]
    return dx


@nb.njit(cache=True)
def _pmulmod(a, b, m, dm, p, out):
    """out <- a*b mod m, a and b of degree < dm."""
    prod = np.zeros(2 * dm + 1, np.int64)
    for i in range(dm):
        if a[i] == 0:
            continue
        for j in range(dm):
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p
    dp = _prem(prod, 2 * dm, m, dm, p)
    for i in range(out.shape[0]):
        out[i] = 0
    for i in range(min(dp + 1, out.shape[0])):
        out[i] = prod[i]


@nb.njit(cache=True)
def _pdiv_exact(a, da, b, db, p, q):
    """q <- a / b (exact division); returns degree of q."""
    r = a.copy()
    inv = _powmod(b[db], p - 2, p)
    for i in range(q.shape[0]):
        q[i] = 0
    dq = da - db
    for k in range(da, db - 1, -1):
        c = (r[k] * inv) % p
        q[k - db] = c
        if c != 0:
            for i in range(db + 1):
                r[k - db + i] = (r[k - db + i] - c * b[i]) % p
    return dq


@nb.njit(cache=True)
def degree_mask_mod_p(a, n, p):
    """Bitmask of factor-degree subset sums of the monic f mod p, or -1 if f mod p
    is not squarefree.  Bit k set means some product of factors has degree k."""
    m = n + 1
    f = np.zeros(m, np.int64)
    for i in range(n):
        f[i] = a[i] % p
    f[n] = 1
    df = np.zeros(m, np.int64)
    for i in range(1, n + 1):
        df[i - 1] = (i * f[i]) % p
    g = np.zeros(m, np.int64)
    dg = _pgcd(f, n, df, n - 1, p, g)
    if dg != 0:
        return -1
    mask = np.int64(1)
    rem = f.copy()
    drem = n
    h = np.zeros(m, np.int64)
    h[1] = 1
    if n == 1:
        return np.int64(3)
    tmp = np.zeros(m, np.int64)
    d = 0
    while 2 * (d + 1) <= drem:
        d += 1
        # h <- h^p mod rem
        base = h.copy()
        res = np.zeros(m, np.int64)
        res[0] = 1
        e = p
        while e > 0:
            if e & 1:
                _pmulmod(res, base, rem, drem, p, tmp)
                res[:] = tmp
            e >>= 1
            if e > 0:
                _pmulmod(base, base, rem, drem, p, tmp)
                base[:] = tmp
        h[:] = res
        hx = h.copy()
        hx[1] = (hx[1] - 1) % p
        dhx = _pdeg(hx, drem - 1)
        if dhx < 0:
            dg = drem
            g[:] = rem
        else:
            dg = _pgcd(rem, drem, hx, dhx, p, g)
        if dg > 0:
            for _ in range(dg // d):
                mask = mask | (mask << d)
            q = np.zeros(m, np.int64)
            dq = _pdiv_exact(rem, drem, g, dg, p, q)
            rem[:] = q
            drem = dq
            if drem > 0:
                dh = _prem(h, drem + dg - 1, rem, drem, p)
                for i in range(dh + 1, m):
                    h[i] = 0
    if drem > 0:
        mask = mask | (mask << drem)
    return mask


SMALL_PRIMES = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                         61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113], np.int64)


@nb.njit(cache=True)
def irreducible_by_patterns(a, n, primes):
    """True when factor-degree patterns mod small primes exclude every proper factor."""
    full = (np.int64(1) << (n + 1)) - 1
    inner = full & ~np.int64(1) & ~(np.int64(1) << n)
    allowed = inner
    for idx in range(primes.shape[0]):
        mk = degree_mask_mod_p(a, n, primes[idx])
        if mk < 0:
            continue
        allowed &= mk
        if allowed == 0:
            return True
    return False
