"""Canonical defining polynomials: the minimal-T2 generator of O_K.

The T2 form is evaluated numerically from the complex roots of f; the chosen
polynomial itself is always computed exactly, as the characteristic
polynomial of an integer multiplication matrix.

Tie-break (format version 1): smallest T2 (relative tolerance 1e-9), then the
absolute coefficient vector (|a_{n-1}|, ..., |a_0|), then a_{n-1} >= 0, then
the signed vector (a_{n-1}, ..., a_0).
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .exactmath import PrecisionExhausted, complex_roots, discriminant, factor_mod_p
from .exactmath.polys import divmod_monic, mul
from .orders import field_discriminant, integral_basis

TIEBREAK_VERSION = 1
T2_RTOL = 1e-9


@dataclass(frozen=True)
class CanonicalForm:
    poly: tuple      # a_0..a_n, monic
    t2: float

    @property
    def degree(self):
        return len(self.poly) - 1


def _roots(f):
    """Complex roots as float64; certified isolation when numpy's answer looks poor."""
    c = np.array(f[::-1], dtype=float)
    r = np.roots(c)
    # two Newton polishing steps in float
    df = np.polyder(c)
    for _ in range(2):
        d = np.polyval(df, r)
        ok = d != 0
        r[ok] = r[ok] - np.polyval(c, r[ok]) / d[ok]
    scale = 1.0 + np.abs(r)
    if np.max(np.abs(np.polyval(c, r)) / (1.0 + np.abs(np.polyval(df, r)) * scale)) > 1e-9:
        boxes = complex_roots(f, 64)
        r = np.array([complex(b.center) for b in boxes])
    return r


def embedding_matrix(f, basis, den, roots=None):
    """E[i, k] = sigma_k(w_i) over all n complex embeddings."""
    if roots is None:
        roots = _roots(f)
    n = len(f) - 1
    V = np.vander(roots, n, increasing=True)          # V[k, j] = r_k^j
    B = np.array(basis, dtype=float) / den
    return B @ V.T


def gram_t2(E):
    return np.real(E @ np.conj(E).T)


def integral_basis_lattice(f, fd=None):
    """(basis rows, den, Gram matrix of T2, embedding matrix) for O_K."""
    basis, den = integral_basis(f, fd)
    E = embedding_matrix(f, basis, den)
    return basis, den, gram_t2(E), E


def lll_gram(G, delta=0.99):
    """LLL on a Gram matrix; returns (U, G') with rows of U the new basis in old coordinates."""
    n = G.shape[0]
    G = G.copy()
    U = np.eye(n, dtype=np.int64)
    mu = np.zeros((n, n))
    Bn = np.zeros(n)

    def gso(upto):
        for i in range(upto + 1):
            for j in range(i):
                mu[i, j] = (G[i, j] - np.dot(mu[j, :j], mu[i, :j] * Bn[:j])) / Bn[j]
            Bn[i] = G[i, i] - np.dot(mu[i, :i] ** 2, Bn[:i])

    def swap(a, b):
        U[[a, b]] = U[[b, a]]
        G[[a, b]] = G[[b, a]]
        G[:, [a, b]] = G[:, [b, a]]

    def reduce(k, j):
        q = round(mu[k, j])
        if q:
            U[k] -= q * U[j]
            G[k, :] -= q * G[j, :]
            G[:, k] -= q * G[:, j]
            mu[k, :j] -= q * mu[j, :j]
            mu[k, j] -= q

    gso(n - 1)
    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 100000:
            break
        for j in range(k - 1, -1, -1):
            if abs(mu[k, j]) > 0.5:
                reduce(k, j)
        if Bn[k] < (delta - mu[k, k - 1] ** 2) * Bn[k - 1]:
            swap(k, k - 1)
            gso(n - 1)
            k = max(k - 1, 1)
        else:
            k += 1
    return U, G


def short_vectors(G, R):
    """All nonzero x in Z^n with x G x^T <= R, one of each +-pair (Fincke-Pohst)."""
    n = G.shape[0]
    # Cholesky-type decomposition q[i][i], q[i][j]
    q = np.zeros((n, n))
    A = G.copy()
    for i in range(n):
        q[i, i] = A[i, i]
        for j in range(i + 1, n):
            q[i, j] = A[i, j] / A[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                A[k, l] -= q[i, k] * q[i, l] * q[i, i]
    out = []
    x = np.zeros(n, dtype=np.int64)
    Tt = np.zeros(n)
    Uu = np.zeros(n)
    L = np.zeros(n, dtype=np.int64)
    eps = 1e-9 * max(R, 1.0)
    i = n - 1
    Tt[i] = R
    Uu[i] = 0.0

    def set_bounds(i):
        z = math.sqrt(max(Tt[i], 0.0) / q[i, i] + eps)
        L[i] = math.floor(z - Uu[i])
        x[i] = math.ceil(-z - Uu[i]) - 1

    set_bounds(i)
    while True:
        x[i] += 1
        if x[i] > L[i]:
            i += 1
            if i >= n:
                break
            continue
        if i > 0:
            Tt[i - 1] = Tt[i] - q[i, i] * (x[i] + Uu[i]) ** 2
            i -= 1
            Uu[i] = sum(q[i, j] * x[j] for j in range(i + 1, n))
            set_bounds(i)
            continue
        if not x.any():
            break  # reached the zero vector: the remaining half is the negatives
        out.append(x.copy())
    return out


def charpoly_int_matrix(M):
    """Characteristic polynomial (a_0..a_n, monic) of an integer matrix, Faddeev-LeVerrier."""
    n = len(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # Mk <- M (Mk_prev + c_{n-k+1} I)
        if k == 1:
            Mk = [row[:] for row in M]
        else:
            prev = [row[:] for row in Mk]
            for i in range(n):
                prev[i][i] += coeffs[n - k + 1]
            Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(Mk[i][i] for i in range(n))
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return coeffs


def _mult_matrix(g, f):
    """Integer matrix of multiplication by g(x) on the power basis of Z[x]/(f)."""
    n = len(f) - 1
    rows = []
    cur = divmod_monic(g, f)[1] if len(g) > n else list(g)
    for i in range(n):
        v = cur + [0] * (n - len(cur))
        rows.append(v)
        cur = divmod_monic([0] + cur, f)[1] if len(cur) >= n else [0] + cur
    return rows


def exact_charpoly(f, coeff_row, den):
    """Exact characteristic polynomial of (sum_j coeff_row[j] x^j)/den in Q[x]/(f)."""
    n = len(f) - 1
    g = list(coeff_row)
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    P = charpoly_int_matrix(_mult_matrix(g, f))
    # alpha = beta/den: P_alpha(y) = P_beta(den y)/den^n
    out = []
    for k, c in enumerate(P):
        num = c * den ** k
        q, r = divmod(num, den ** n)
        if r:
            raise ArithmeticError("element is not integral")
        out.append(q)
    return out


def _key(poly):
    n = len(poly) - 1
    signed = tuple(poly[n - 1::-1])
    absv = tuple(abs(c) for c in signed)
    return (absv, 0 if signed[0] >= 0 else 1, signed)


def _negate(poly):
    n = len(poly) - 1
    return [c if (n - k) % 2 == 0 else -c for k, c in enumerate(poly)]


def _is_primitive(conj, tol=1e-7):
    n = len(conj)
    scale = 1.0 + np.max(np.abs(conj))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(conj[i] - conj[j]) < tol * scale:
                return False
    return True


def canonical_polynomial(f, fd=None):
    """Minimal-T2 generator of O_K, returned as its exact monic minimal polynomial."""
    n = len(f) - 1
    if n == 1:
        return CanonicalForm((0, 1), 0.0)
    basis, den = integral_basis(f, fd)
    E = embedding_matrix(f, basis, den)
    G = gram_t2(E)
    U, Gr = lll_gram(G)
    Er = U.astype(float) @ E
    Gr = gram_t2(Er)
    norms = np.real(np.sum(Er * np.conj(Er), axis=1))
    R = None
    for i in range(n):
        if _is_primitive(Er[i]):
            R = norms[i] if R is None else min(R, norms[i])
    k = 2
    while R is None:
        for idx in combinations(range(n), k):
            for signs in range(1 << (k - 1)):
                v = Er[idx[0]].copy()
                for s, j in enumerate(idx[1:]):
                    v = v - Er[j] if (signs >> s) & 1 else v + Er[j]
                if _is_primitive(v):
                    t2 = float(np.real(np.sum(v * np.conj(v))))
                    R = t2 if R is None else min(R, t2)
        k += 1
        if k > n and R is None:
            raise ArithmeticError("no primitive element found")
    vecs = short_vectors(Gr, R * (1 + 1e-7) + 1e-9)
    cands = []
    for x in vecs:
        conj = x.astype(float) @ Er
        if not _is_primitive(conj):
            continue
        t2 = float(np.real(np.sum(conj * np.conj(conj))))
        cands.append((t2, x))
    if not cands:
        raise ArithmeticError("short-vector search found no generator")
    cands.sort(key=lambda c: c[0])
    while cands:
        tmin = cands[0][0]
        tied = [c for c in cands if c[0] <= tmin * (1 + T2_RTOL) + 1e-12]
        best = None
        for t2, x in tied:
            coords = (x @ U).tolist()
            row = [sum(int(coords[i]) * basis[i][j] for i in range(n)) for j in range(n)]
            P = exact_charpoly(f, row, den)
            if discriminant(P) == 0:
                continue
            for cand in (P, _negate(P)):
                if best is None or _key(cand) < _key(best):
                    best = cand
        if best is not None:
            return CanonicalForm(tuple(best), tmin)
        cands = cands[len(tied):]
    raise ArithmeticError("no exact generator among short vectors")


def fingerprint(f, m=20):
    """Sorted factor-degree patterns of f at the first m primes not dividing disc(f)."""
    D = discriminant(f)
    out = []
    p = 2
    while len(out) < m:
        if D % p:
            out.append(tuple(d for d, e in factor_mod_p(f, p) for _ in range(e)))
        p += 1
        while any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            p += 1
    return out


def fields_isomorphic(f, g):
    if len(f) != len(g):
        return False
    if field_discriminant(f).d_K != field_discriminant(g).d_K:
        return False
    Df, Dg = discriminant(f), discriminant(g)
    p, seen = 2, 0
    while seen < 20:
        if Df % p and Dg % p:
            pf = sorted(d for d, e in factor_mod_p(f, p) for _ in range(e))
            pg = sorted(d for d, e in factor_mod_p(g, p) for _ in range(e))
            if pf != pg:
                return False
            seen += 1
        p += 1
        while any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            p += 1
    return canonical_polynomial(f).poly == canonical_polynomial(g).poly
