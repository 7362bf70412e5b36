"""Predicted constants: Bhargava's B_n, Cohen-Martinet class-group
probabilities, the 2-adic correction for S5-fields with one real place,
automorphism counts of finite abelian groups.
"""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .exactmath.integers import primes_up_to

WORK_DPS = 30


class PrecisionUnreachable(ValueError):
    pass


class BadSupport(ValueError):
    pass


class MissingClassData(ValueError):
    pass


# --- partitions and local masses ------------------------------------------------

@lru_cache(maxsize=None)
def partitions_at_most(k, m):
    """Number of partitions of k into at most m parts."""
    if k == 0:
        return 1
    if m <= 0:
        return 0
    # either fewer than m parts, or m parts each >= 1 (subtract 1 from each)
    return partitions_at_most(k, m - 1) + (partitions_at_most(k - m, m) if k >= m else 0)


def mass_coefficients(n):
    return [partitions_at_most(k, n - k) for k in range(n)]


def local_mass(n, p):
    """sum_{k<n} q(k, n-k) p^-k as an exact fraction."""
    return sum(Fraction(c, p ** k) for k, c in enumerate(mass_coefficients(n)))


def archimedean_mass(signatures):
    return sum(Fraction(1, 2 ** r2 * math.factorial(r1) * math.factorial(r2)) for r1, r2 in signatures)


def _euler_poly(n):
    """Integer coefficients of g(x) = (1 - x) m(x)."""
    m = mass_coefficients(n)
    g = [0] * (n + 1)
    for k, c in enumerate(m):
        g[k] += c
        g[k + 1] -= c
    return g


def log_series(g, J):
    """Exact coefficients l_1..l_J of ln g(x) for an integer polynomial with g(0) = 1."""
    L = [0] * (J + 1)
    for j in range(1, J + 1):
        gj = g[j] if j < len(g) else 0
        s = j * gj
        for k in range(1, j):
            if j - k < len(g):
                s -= L[k] * g[j - k]
        L[j] = s
    return [Fraction(0)] + [Fraction(L[j], j) for j in range(1, J + 1)]


def _min_root_modulus(g):
    roots = np.roots(list(reversed(g)))
    return float(np.min(np.abs(roots)))


# --- prime zeta -----------------------------------------------------------------

def _mobius(m):
    res, k, x = 1, 2, m
    while k * k <= x:
        if x % k == 0:
            x //= k
            if x % k == 0:
                return 0
            res = -res
        k += 1
    return -res if x > 1 else res


def prime_zeta(s, dps=WORK_DPS):
    """P(s) = sum_p p^-s via sum_m mu(m)/m ln zeta(m s)."""
    if s < 2:
        raise ValueError("prime zeta needs s >= 2")
    with mpmath.workdps(dps + 10):
        eps = mpmath.mpf(10) ** (-(dps + 5))
        total = mpmath.mpf(0)
        m = 1
        while True:
            term_size = mpmath.mpf(2) ** (-m * s)
            if term_size < eps and m > 1:
                break
            mu = _mobius(m)
            if mu:
                total += mpmath.mpf(mu) / m * mpmath.log(mpmath.zeta(m * s))
            m += 1
        return +total


# --- Bhargava constants ------------------------------------------------------------

@dataclass(frozen=True)
class EulerProductJob:
    degree: int
    signatures: tuple        # (r1, r2) pairs
    digits: int = 12
    method: str = "prime-zeta"
    p_max: int = 10 ** 6


@dataclass(frozen=True)
class ConstantValue:
    value: float
    error: float
    method: str
    mp_value: object = None


def _euler_prime_zeta(n, digits):
    """Product over all primes of (1 - 1/p) m_p(n), by prime-zeta acceleration."""
    g = _euler_poly(n)
    rho = _min_root_modulus(g)
    Q = 100                                   # primes below Q are multiplied exactly
    small = [int(p) for p in primes_up_to(Q - 1)]
    dps = max(WORK_DPS, digits + 10)
    with mpmath.workdps(dps):
        log_small = mpmath.mpf(0)
        for p in small:
            x = mpmath.mpf(1) / p
            log_small += mpmath.log(sum(c * x ** k for k, c in enumerate(g)))
        # tail: sum_j l_j (P(j) - sum_{p<Q} p^-j); |l_j| <= deg * rho^-j / j
        target = mpmath.mpf(10) ** (-(digits + 3))
        deg = len(g) - 1
        J = 2
        while True:
            bound = deg * (1.0 / (rho * Q)) ** J * Q / max(J - 1, 1)
            if bound < target and J > 4:
                break
            J += 1
        ls = log_series(g, J)
        log_tail = mpmath.mpf(0)
        for j in range(2, J + 1):
            if ls[j] == 0:
                continue
            Pj = prime_zeta(j, dps) - sum(mpmath.mpf(p) ** (-j) for p in small)
            log_tail += mpmath.mpf(ls[j].numerator) / ls[j].denominator * Pj
        value = mpmath.exp(log_small + log_tail)
        err = float(value) * 2 * float(bound)
    return value, err


def _euler_direct(n, p_max):
    """Direct product over p <= p_max with a rigorous bound for the omitted primes."""
    g = _euler_poly(n)
    ps = primes_up_to(p_max).astype(np.float64)
    x = 1.0 / ps
    val = np.zeros_like(x)
    for k in range(len(g) - 1, -1, -1):
        val = val * x + g[k]
    logsum = math.fsum(np.log(val).tolist())
    rho = _min_root_modulus(g)
    deg = len(g) - 1
    # |ln g(x)| <= deg (x/rho)^2 / (2 (1 - x/rho)) and sum_{p>P} p^-2 < 2.51/(P ln P)
    P = float(p_max)
    tail = deg / (2 * rho * rho) / (1 - 1 / (P * rho)) * 2.51 / (P * math.log(P))
    rounding = len(ps) * 2.3e-16 * 4
    value = math.exp(logsum)
    return value, value * (math.expm1(tail + rounding))


def bhargava_constant(job):
    """B = 1/2 * (archimedean mass of the signatures) * prod_p (1 - 1/p) m_p(n)."""
    n = job.degree
    if not 2 <= n <= 11:
        raise ValueError("degree must lie in 2..11")
    arch = archimedean_mass(job.signatures)
    if job.method == "prime-zeta":
        if job.digits > 40:
            raise PrecisionUnreachable("at most 40 digits are supported")
        prod, err = _euler_prime_zeta(n, job.digits)
        with mpmath.workdps(max(WORK_DPS, job.digits + 10)):
            val = mpmath.mpf(arch.numerator) / (2 * arch.denominator) * prod
        factor = float(arch) / 2
        return ConstantValue(float(val), err * factor, job.method, val)
    if job.method == "direct":
        prod, err = _euler_direct(n, job.p_max)
        factor = float(arch) / 2
        return ConstantValue(prod * factor, err * factor, job.method)
    raise ValueError(f"unknown method {job.method!r}")


def r1le1_signatures(n):
    return ((n % 2, n // 2),)


# --- finite abelian groups -----------------------------------------------------------

def _factor_small(m):
    out = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianGroupType:
    """Finite abelian group as prime -> partition (exponents, nonincreasing)."""
    parts: tuple     # ((p, (e1, e2, ...)), ...) sorted by p

    @classmethod
    def from_invariants(cls, divisors):
        per = defaultdict(list)
        for d in divisors:
            if d < 1:
                raise ValueError("invariant factors must be positive")
            for p, e in _factor_small(d).items():
                per[p].append(e)
        return cls(tuple((p, tuple(sorted(es, reverse=True))) for p, es in sorted(per.items())))

    @classmethod
    def trivial(cls):
        return cls(())

    @property
    def order(self):
        o = 1
        for p, lam in self.parts:
            o *= p ** sum(lam)
        return o

    def partition(self, p):
        for q, lam in self.parts:
            if q == p:
                return lam
        return ()

    def rank(self, p):
        return len(self.partition(p))

    @property
    def two_rank(self):
        return self.rank(2)

    def invariants(self):
        """Invariant factors d1 >= d2 >= ... (d_{i+1} | d_i)."""
        k = max((len(lam) for _, lam in self.parts), default=0)
        out = []
        for i in range(k):
            d = 1
            for p, lam in self.parts:
                if i < len(lam):
                    d *= p ** lam[i]
            out.append(d)
        return out

    def without(self, primes):
        return AbelianGroupType(tuple((p, lam) for p, lam in self.parts if p not in primes))

    def only(self, p):
        return AbelianGroupType(tuple((q, lam) for q, lam in self.parts if q == p))

    def label(self):
        inv = self.invariants()
        if not inv:
            return "1"
        out = []
        for d, k in _runs(inv):
            out.append(f"{d}^{k}" if k > 1 else str(d))
        return "x".join(out)


def _runs(seq):
    out = []
    for v in seq:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(a, b) for a, b in out]


def parse_group_label(text):
    """Inverse of AbelianGroupType.label: '1', '3', '3^2', '4x2', '2^3'."""
    text = text.strip()
    if text in ("1", ""):
        return AbelianGroupType.trivial()
    divs = []
    for piece in text.split("x"):
        if "^" in piece:
            d, k = piece.split("^")
            divs += [int(d)] * int(k)
        else:
            divs.append(int(piece))
    return AbelianGroupType.from_invariants(divs)


def _aut_p(p, lam):
    """|Aut| of the abelian p-group of type lam (any order)."""
    e = sorted(lam)            # nondecreasing
    k = len(e)
    total = 1
    for j in range(1, k + 1):
        ej = e[j - 1]
        d = max(l for l in range(1, k + 1) if e[l - 1] == ej)
        c = min(l for l in range(1, k + 1) if e[l - 1] == ej)
        total *= (p ** d - p ** (j - 1))
        total *= p ** (ej * (k - d))
        total *= p ** ((ej - 1) * (k - c + 1))
    return total


def aut_order(H):
    out = 1
    for p, lam in H.parts:
        out *= _aut_p(p, lam)
    return out


def _integer_partitions(n, maxpart=None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in _integer_partitions(n - k, k):
            yield (k,) + rest


def abelian_groups_of_order(m):
    fac = sorted(_factor_small(m).items())
    choices = [[(p, lam) for lam in _integer_partitions(e)] for p, e in fac]
    out = []

    def rec(i, acc):
        if i == len(choices):
            out.append(AbelianGroupType(tuple(acc)))
            return
        for c in choices[i]:
            rec(i + 1, acc + [c])

    rec(0, [])
    return out


# --- Cohen-Martinet ------------------------------------------------------------

def cm_constant(e, S, dps=WORK_DPS):
    """prod_{p not in S} prod_{k >= e+1} (1 - p^-k)."""
    S = tuple(sorted(set(S)))
    with mpmath.workdps(dps + 10):
        eps = mpmath.mpf(10) ** (-(dps + 5))
        logc = mpmath.mpf(0)
        s = e + 1
        while True:
            # coefficient of sum_p p^-s in -ln c: sum over k | s, k >= e+1, of k/s
            a = sum(mpmath.mpf(k) / s for k in range(e + 1, s + 1) if s % k == 0)
            if a:
                Ps = prime_zeta(s, dps) - sum(mpmath.mpf(p) ** (-s) for p in S)
                logc -= a * Ps
            if a * mpmath.mpf(2) ** (-s) * 4 < eps:
                break
            s += 1
        return +mpmath.exp(logc)


def cm_probability(H, e, S, constant=None):
    """c(e,S) / (|H|^e |Aut H|) for H of order prime to S."""
    order = H.order
    for p in S:
        if order % p == 0:
            raise BadSupport(f"|H| = {order} shares the prime {p} with the excluded set")
    c = float(cm_constant(e, S)) if constant is None else constant
    return c / (order ** e * aut_order(H))


def cm_constant_by_summation(e, S, cutoff):
    """1 / sum_H 1/(|H|^e |Aut H|) over |H| <= cutoff prime to S, with a tail estimate."""
    total = 0.0
    for m in range(1, cutoff + 1):
        if any(m % p == 0 for p in S):
            continue
        for H in abelian_groups_of_order(m):
            total += 1.0 / (m ** e * aut_order(H))
    # Hall: sum_{|H| = p^k} 1/|Aut H| = p^-k prod_{i<=k} (1 - p^-i)^-1, so the groups of
    # order m contribute at most 2.295 (m / phi(m)) / m; m/phi(m) < 10.2 for m < 10^100
    tail = 2.295 * 10.2 / (e * cutoff ** e)
    return 1.0 / total, tail


# --- 2-adic correction ------------------------------------------------------------

def _malle_weight(H2):
    r = H2.two_rank
    prod = 1.0
    for i in range(3, r + 3):
        prod *= 1 - 2.0 ** (-i)
    return float(Fraction(2 ** ((r * r - r) // 2), H2.order ** 2 * aut_order(H2))) * prod


def two_groups_up_to(k_max):
    out = []
    for k in range(0, k_max + 1):
        for lam in _integer_partitions(k):
            out.append(AbelianGroupType(((2, lam),)) if lam else AbelianGroupType.trivial())
    return out


def malle_normalization_sum(k_max, constant=None):
    c = malle_constant() if constant is None else constant
    return sum(c * _malle_weight(H) for H in two_groups_up_to(k_max))


@lru_cache(maxsize=1)
def malle_constant(k_max=30):
    """Normalizing constant (0.786...) so that the 2-group probabilities sum to 1."""
    return 1.0 / math.fsum(_malle_weight(H) for H in two_groups_up_to(k_max))


def malle_two_part_probability(H2):
    if any(p != 2 for p, _ in H2.parts):
        raise BadSupport("expected a 2-group")
    return malle_constant() * _malle_weight(H2)


def malle_combined_probability(H, e=2, S=(5,)):
    """2-part by the corrected formula times the odd S'-part by Cohen-Martinet."""
    H2 = H.only(2)
    odd = H.without({2})
    return malle_two_part_probability(H2) * cm_probability(odd, e, tuple(sorted(set(S) | {2})))


# --- empirical comparison ------------------------------------------------------------

def class_distribution(records, block_size, excluded):
    """Per block of ``block_size`` records (in stored order): label -> relative frequency
    of the class-group part prime to ``excluded``."""
    excluded = set(excluded)
    rows = []
    block = []
    for r in records:
        if r.classgroup is None:
            raise MissingClassData(f"record with d_K = {r.d_K} has no class group")
        block.append(AbelianGroupType.from_invariants(r.classgroup).without(excluded).label())
        if len(block) == block_size:
            rows.append(_proportions(block))
            block = []
    if block:
        rows.append(_proportions(block))
    return rows


def _proportions(labels):
    c = Counter(labels)
    n = len(labels)
    return {k: v / n for k, v in sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))}


def deviation_table(observed, predicted):
    return {k: 100.0 * abs(observed.get(k, 0.0) - p) / p for k, p in predicted.items()}


def format_sig(x, digits=3):
    """Round to the given number of significant digits (paper-style display)."""
    if x == 0:
        return 0.0
    return float(f"{x:.{digits}g}")
