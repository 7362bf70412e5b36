"""Galois group labels for number fields given by a defining polynomial."""

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import mpmath
import numpy as np

from ..exactmath import complex_roots, discriminant, factor_mod_p, is_irreducible_over_Q, is_square
from ..exactmath.integers import small_primes
from ..exactmath.polys import deriv, exact_div, gcd_poly, primitive_part
from .groups import CycleTypeSet

DATA_PATH = os.path.join(os.path.dirname(__file__), "data", "groups.json")

PROVEN, STATISTICAL = "proven", "statistical"
IMPRIMITIVE = "imprimitive"
LR_MIN = 10 * math.log(10)       # required log-likelihood lead for a statistical label
MAX_SAMPLE = 6400


class AmbiguousAfterSampling(RuntimeError):
    def __init__(self, candidates, m):
        super().__init__(f"{len(candidates)} candidates remain after {m} primes: {candidates}")
        self.candidates = candidates
        self.m = m


@dataclass(frozen=True)
class GaloisLabel:
    degree: int
    name: str
    certainty: str
    witness: str = ""

    @property
    def primitive(self):
        return self.name != IMPRIMITIVE


@lru_cache(maxsize=1)
def group_table():
    with open(DATA_PATH) as fh:
        rows = json.load(fh)
    out = {}
    for r in rows:
        counts = tuple(sorted((tuple(t), c) for t, c in r["counts"]))
        out[r["name"]] = (r["degree"], CycleTypeSet(r["degree"], r["order"], counts))
    return out


PRIMITIVE_QUARTIC = ("A4", "S4")


def primitive_candidates(n):
    """Complete list of primitive groups of degree n, as (name, CycleTypeSet)."""
    out = []
    for name, (deg, cts) in group_table().items():
        if deg != n:
            continue
        if n == 4 and name not in PRIMITIVE_QUARTIC:
            continue
        out.append((name, cts))
    return out


def _is_even(t):
    return (sum(t) - len(t)) % 2 == 0


def contained_in_alternating(cts):
    return all(_is_even(t) for t in cts.types)


def conjugation_type(r1, n):
    return tuple([2] * ((n - r1) // 2) + [1] * r1)


def disc_is_square(d_K):
    return d_K > 0 and is_square(d_K)


# --- Frobenius sampling -------------------------------------------------

def _pattern(f, p):
    return tuple(sorted((d for d, e in factor_mod_p(f, p) for _ in range(e)), reverse=True))


def frobenius_fingerprint(f, m, poly_disc=None):
    """Cycle types of Frobenius at the first m primes not dividing disc(f)."""
    D = discriminant(f) if poly_disc is None else poly_disc
    out = []
    limit = 1000
    while True:
        for p in small_primes(limit):
            if D % p == 0:
                continue
            out.append(_pattern(f, p))
            if len(out) == m:
                return out
        out = []
        limit *= 4


def _transposition_witness(t):
    even = [k for k in t if k % 2 == 0]
    return len(even) == 1 and even[0] == 2


def _is_prime(k):
    return k > 1 and all(k % q for q in range(2, int(k ** 0.5) + 1))


def _pcycle_parts(t, n):
    return [k for k in t if _is_prime(k) and 2 * k > n]


# --- degree 4 and 5 ---------------------------------------------------------

def cubic_resolvent(f):
    """Resolvent cubic whose roots are x1x2+x3x4 etc., for monic quartic f."""
    d, c, b, a = f[0], f[1], f[2], f[3]
    return [-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1]


def quartic_group(f, d_K):
    R = cubic_resolvent(f)
    if not is_irreducible_over_Q(R):
        return GaloisLabel(4, IMPRIMITIVE, PROVEN, "cubic resolvent reducible")
    if disc_is_square(d_K):
        return GaloisLabel(4, "A4", PROVEN, "cubic resolvent irreducible, square discriminant")
    return GaloisLabel(4, "S4", PROVEN, "cubic resolvent irreducible, non-square discriminant")


def _f20_classes():
    """The six pentagon/pentagram pairs on 5 points (cosets of F20 in S5)."""
    classes = {}
    for rest in __import__("itertools").permutations(range(1, 5)):
        cyc = (0,) + rest
        pent = frozenset(frozenset((cyc[i], cyc[(i + 1) % 5])) for i in range(5))
        star = frozenset(frozenset(e) for e in combinations(range(5), 2)) - pent
        key = frozenset((pent, star))
        classes.setdefault(key, (tuple(tuple(e) for e in pent), tuple(tuple(e) for e in star)))
    return list(classes.values())


_F20 = _f20_classes()


def cayley_resolvent(f, bits=256):
    """Integer sextic whose roots are (sum over pentagon - sum over pentagram)^2."""
    while True:
        boxes = complex_roots(f, bits)
        with mpmath.workprec(bits):
            r = [b.center for b in boxes]
            thetas = []
            for pent, star in _F20:
                s = sum(r[i] * r[j] for i, j in pent) - sum(r[i] * r[j] for i, j in star)
                thetas.append(s * s)
            poly = [mpmath.mpc(1)]
            for th in thetas:
                poly = [mpmath.mpc(0)] + poly
                for k in range(len(poly) - 1):
                    poly[k] -= th * poly[k + 1]
            coeffs = [int(mpmath.nint(c.real)) for c in poly]
            err = max(abs(c - k) for c, k in zip(poly, coeffs))
            big = max(1, max(abs(t) for t in thetas))
        if err < 0.01 and mpmath.log(big, 2) * 6 + 40 < bits:
            return coeffs, thetas
        bits *= 2


def _has_integer_root(R, thetas):
    for th in thetas:
        k = int(mpmath.nint(th.real))
        if abs(th - k) < 0.5 and sum(c * k ** i for i, c in enumerate(R)) == 0:
            return True
    return False


def _tschirnhaus(f, shift):
    """Characteristic polynomial of x^2 + shift*x in Q[x]/(f)."""
    from ..canon import exact_charpoly
    return exact_charpoly(f, [0, shift, 1], 1)


def quintic_group(f, d_K, signature=None, m=100):
    g = list(f)
    shift = 0
    while True:
        R, thetas = cayley_resolvent(g)
        if discriminant(R) != 0:
            break
        shift += 1
        g = _tschirnhaus(f, shift)
    square = disc_is_square(d_K)
    if not _has_integer_root(R, thetas):
        name = "A5" if square else "S5"
        return GaloisLabel(5, name, PROVEN, "Cayley resolvent has no rational root")
    if not square:
        return GaloisLabel(5, "F20", PROVEN, "Cayley resolvent has a rational root, non-square disc")
    if signature is not None and signature[0] != 5:
        return GaloisLabel(5, "D5", PROVEN, "complex conjugation has type (2,2,1)")
    for p, t in zip(_sample_primes(f, m), frobenius_fingerprint(f, m)):
        if t == (2, 2, 1):
            return GaloisLabel(5, "D5", PROVEN, f"Frobenius at {p} has type (2,2,1)")
    return GaloisLabel(5, "C5", STATISTICAL, f"only types 1^5 and 5 among {m} primes")


def _sample_primes(f, m):
    D = discriminant(f)
    out = []
    limit = 1000
    while len(out) < m:
        out = [p for p in small_primes(limit) if D % p][:m]
        limit *= 4
    return out


# --- subfields ----------------------------------------------------------------

def _hermite(m):
    from ..hunter import HERMITE
    return HERMITE[m] if m >= 1 else 1.0


def _perfect_power_root(P, d):
    """If P == g^(n/d) with g of degree d, return g."""
    n = len(P) - 1
    sqf = primitive_part(exact_div(P, gcd_poly(P, deriv(P))) or [])
    if len(sqf) - 1 != d:
        return None
    k = n // d
    acc = [1]
    from ..exactmath.polys import mul
    for _ in range(k):
        acc = mul(acc, sqf)
    return sqf if acc == list(P) else None


def find_subfield(f, d_K, fd=None, max_vectors=2_000_000):
    """Search O_K for a generator of a proper subfield of degree > 1.

    Returns (degree, defining polynomial) or None.  The search radius comes from
    Hunter's bound in the subfield, so a None answer proves the field primitive.
    """
    from ..canon import embedding_matrix, gram_t2, lll_gram, short_vectors, exact_charpoly
    from ..orders import integral_basis
    n = len(f) - 1
    divs = [d for d in range(2, n) if n % d == 0]
    if not divs:
        return None
    basis, den = integral_basis(f, fd)
    E = embedding_matrix(f, basis, den)
    U, _ = lll_gram(gram_t2(E))
    Er = U.astype(float) @ E
    Gr = gram_t2(Er)
    radius = 0.0
    for d in divs:
        dl = abs(d_K) ** (d / n)
        tl = d / 4.0 + _hermite(d - 1) * (dl / d) ** (1.0 / (d - 1))
        radius = max(radius, (n / d) * tl)
    vecs = short_vectors(Gr, radius * (1 + 1e-7) + 1e-6)
    if len(vecs) > max_vectors:
        raise RuntimeError("subfield search ball too large")
    for x in vecs:
        conj = x.astype(float) @ Er
        scale = 1.0 + np.max(np.abs(conj))
        # group equal conjugates
        distinct = []
        for c in conj:
            if not any(abs(c - v) < 1e-7 * scale for v in distinct):
                distinct.append(c)
        k = len(distinct)
        if k == 1 or k == n or k not in divs:
            continue
        coords = (x @ U).tolist()
        row = [sum(int(coords[i]) * basis[i][j] for i in range(n)) for j in range(n)]
        P = exact_charpoly(f, row, den)
        g = _perfect_power_root(P, k)
        if g is not None and is_irreducible_over_Q(g):
            return k, g
    return None


# --- general identification ---------------------------------------------------

def _loglik(cts, sample):
    s = 0.0
    for t in sample:
        fr = cts.frequency(t)
        if fr == 0:
            return -math.inf
        s += math.log(fr)
    return s


def identify_group(f, d_K, signature, m=100, fd=None, escalate=True, subfield_check=True):
    """GaloisLabel for the field Q[x]/(f), f monic irreducible of degree 4..11."""
    n = len(f) - 1
    if n == 4:
        return quartic_group(f, d_K)
    if n == 5:
        return quintic_group(f, d_K, signature, m)
    r1 = signature[0]
    square = disc_is_square(d_K)
    D = discriminant(f)
    while True:
        primes = _sample_primes(f, m)
        sample = frobenius_fingerprint(f, m, D)
        trans = [(p, t) for p, t in zip(primes, sample) if _transposition_witness(t)]
        pcyc = [(p, t) for p, t in zip(primes, sample) if _pcycle_parts(t, n)]
        if trans and pcyc and not square:
            return GaloisLabel(n, f"S{n}", PROVEN,
                               f"transposition type at {trans[0][0]}, "
                               f"{_pcycle_parts(pcyc[0][1], n)[0]}-cycle type at {pcyc[0][0]}")
        small = [(p, t) for p, t in pcyc if any(k <= n - 3 for k in _pcycle_parts(t, n))]
        if square and small:
            return GaloisLabel(n, f"A{n}", PROVEN,
                               f"{_pcycle_parts(small[0][1], n)[0]}-cycle type at {small[0][0]}")
        primitive_proof = "prime degree" if _is_prime(n) else None
        if primitive_proof is None and pcyc:
            primitive_proof = f"prime cycle at {pcyc[0][0]}"
        if primitive_proof is None and subfield_check:
            sub = find_subfield(f, d_K, fd)
            if sub is not None:
                return GaloisLabel(n, IMPRIMITIVE, PROVEN, f"subfield of degree {sub[0]}: {list(sub[1])}")
            primitive_proof = "no subfield"
        conj = conjugation_type(r1, n)
        cands = []
        for name, cts in primitive_candidates(n):
            if conj not in cts:
                continue
            if contained_in_alternating(cts) != square:
                continue
            if all(t in cts for t in sample):
                cands.append((name, cts))
        if not cands:
            raise ValueError("no primitive group fits the sampled cycle types")
        proven = primitive_proof is not None
        if len(cands) == 1:
            return GaloisLabel(n, cands[0][0], PROVEN if proven else STATISTICAL,
                               f"only consistent candidate after {m} primes")
        scored = sorted(((_loglik(cts, sample), name) for name, cts in cands), reverse=True)
        if scored[0][0] - scored[1][0] >= LR_MIN:
            return GaloisLabel(n, scored[0][1], STATISTICAL,
                               f"likelihood lead {scored[0][0] - scored[1][0]:.1f} over {scored[1][1]} at m={m}")
        if not escalate or m * 4 > MAX_SAMPLE:
            raise AmbiguousAfterSampling([name for _, name in scored], m)
        m *= 4
