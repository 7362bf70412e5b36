"""Field discriminants and maximal orders.

An order is stored by a Z-basis in power-basis coordinates (integer rows over
a common denominator) together with its multiplication table in that basis.
Enlargement at a prime p follows Round 2: take the p-radical, then its ring
of multipliers, until nothing changes.
"""

from dataclasses import dataclass, field
from math import gcd

from .exactmath import factor_integer, is_probable_prime, modp
from .exactmath.integers import DEFAULT_RHO_BUDGET
from .exactmath.linalg import hnf, left_kernel_mod_p, solve_upper
from .exactmath.polys import discriminant, divmod_monic, mul, sub


class FactorizationIncomplete(ArithmeticError):
    """disc(f) has a cofactor that blocks a certified d_K."""


@dataclass(frozen=True)
class LocalOrderResult:
    p: int
    v_disc: int
    v_index: int
    v_dk: int


@dataclass(frozen=True)
class FieldDisc:
    d_K: int
    certified: bool
    poly_disc: int = 0
    local: tuple = ()
    unfactored: int = 1         # cofactor taken into d_K without proof, 1 if none
    orders: tuple = field(default=(), compare=False, repr=False)   # (p, p-maximal Order)


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def dedekind_is_pmaximal(f, p):
    """Dedekind criterion for Z[x]/(f) at p (f monic)."""
    fbar = modp.reduce(f, p)
    facs = modp.factor(fbar, p)
    g = [1]
    h = [1]
    for fac, e in facs:
        g = mul(g, fac)
        for _ in range(e - 1):
            h = mul(h, fac)
    if all(e == 1 for _, e in facs):
        return True
    F = sub(mul(g, h), f)
    F = [c // p for c in F]   # exact: g*h == f mod p
    t = modp.gcd(modp.reduce(F, p), modp.reduce(g, p), p)
    t = modp.gcd(t, modp.reduce(h, p), p)
    return modp.deg(t) <= 0


class Order:
    """Z-order of Q[x]/(f): basis rows (power coordinates) / den, with structure constants."""

    def __init__(self, f, basis, den, table):
        self.f = f
        self.n = len(f) - 1
        self.basis = basis
        self.den = den
        self.table = table   # table[i][j] = coordinates of w_i w_j

    @classmethod
    def equation_order(cls, f):
        n = len(f) - 1
        powers = []
        cur = [1]
        for k in range(2 * n - 1):
            r = divmod_monic(cur, f)[1] if len(cur) > n else cur
            powers.append(r + [0] * (n - len(r)))
            cur = [0] + r
        table = [[powers[i + j] for j in range(n)] for i in range(n)]
        basis = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        return cls(f, basis, 1, table)

    def mul(self, x, y):
        """Product of two elements given in basis coordinates."""
        n = self.n
        out = [0] * n
        t = self.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = t[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                row = ti[j]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return out

    def mul_mod(self, x, y, p):
        return [c % p for c in self.mul(x, y)]

    def power_mod(self, x, e, p):
        acc = None
        base = [c % p for c in x]
        while e:
            if e & 1:
                acc = base if acc is None else self.mul_mod(acc, base, p)
            e >>= 1
            if e:
                base = self.mul_mod(base, base, p)
        return acc

    def sublattice(self, rows, p):
        """Order with basis (rows . w)/p, rows an HNF in current coordinates."""
        n = self.n
        new_basis = []
        for r in rows:
            v = [0] * n
            for k, c in enumerate(r):
                if c:
                    b = self.basis[k]
                    for j in range(n):
                        v[j] += c * b[j]
            new_basis.append(v)
        den = self.den * p
        g = den
        for v in new_basis:
            for c in v:
                g = gcd(g, c)
        if g > 1:
            new_basis = [[c // g for c in v] for v in new_basis]
            den //= g
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                z = self.mul(rows[i], rows[j])
                z = [c // p for c in z]
                y = solve_upper(rows, z)
                table[i][j] = table[j][i] = y
        return Order(self.f, new_basis, den, table)


def _radical(order, p):
    """HNF rows (order coordinates) of the p-radical of the order."""
    n = order.n
    q = p
    while q < n:
        q *= p
    frob = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        frob.append(order.power_mod(e, q, p))
    ker = left_kernel_mod_p(frob, p)
    rows = ker + [[p if j == i else 0 for j in range(n)] for i in range(n)]
    return hnf(rows, n)


def _multiplier_step(order, p):
    """One enlargement; returns (new order, log_p of index gain)."""
    n = order.n
    I = _radical(order, p)
    big = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        row = []
        for v in I:
            y = solve_upper(I, order.mul(e, v))
            row.extend(c % p for c in y)
        big.append(row)
    ker = left_kernel_mod_p(big, p)
    if not ker:
        return order, 0
    rows = hnf(ker + [[p if j == i else 0 for j in range(n)] for i in range(n)], n)
    return order.sublattice(rows, p), len(ker)


def p_maximal_order(f, p, order=None):
    """(p-maximal order containing Z[x]/(f), v_p of its index over the equation order)."""
    if order is None:
        order = Order.equation_order(f)
    v = 0
    while True:
        order, gain = _multiplier_step(order, p)
        if gain == 0:
            return order, v
        v += gain


def _local(f, p, poly_disc):
    vd = _valuation(abs(poly_disc), p)
    if vd < 2 or dedekind_is_pmaximal(f, p):
        return LocalOrderResult(p, vd, 0, vd), None
    order, vi = p_maximal_order(f, p)
    return LocalOrderResult(p, vd, vi, vd - 2 * vi), order


def round2_local(f, p, poly_disc=None):
    if poly_disc is None:
        poly_disc = discriminant(f)
    return _local(f, p, poly_disc)[0]


def _int_root(n, k):
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def _split_cofactor(C):
    """Try to write an unfactored composite as a prime power; (p, e) or None."""
    for k in range(C.bit_length(), 1, -1):
        r = _int_root(C, k)
        if r > 1 and r ** k == C and is_probable_prime(r):
            return r, k
    return None


def _prime_support(D, effort):
    fac = factor_integer(D, effort)
    primes = list(fac.factors)
    extra = 1
    C = fac.cofactor or 1
    if C > 1:
        pe = _split_cofactor(C)
        if pe is not None:
            primes.append(pe)
        elif _int_root(C, 2) ** 2 != C:
            extra = C
        else:
            raise FactorizationIncomplete(f"cofactor {C} of disc {D} is a square of a composite")
    return fac.sign, sorted(primes), extra


def field_discriminant(f, effort=DEFAULT_RHO_BUDGET, require_certified=False, poly_disc=None,
                       bound=None):
    """d_K of Q[x]/(f) for monic irreducible f.

    With ``bound`` set, returns None as soon as |d_K| > bound is certain.
    """
    D = discriminant(f) if poly_disc is None else poly_disc
    sign, primes, extra = _prime_support(D, effort)
    certified = extra == 1
    if not certified and require_certified:
        raise FactorizationIncomplete(f"cofactor {extra} of disc {D} not factored")
    if bound is not None:
        # smallest |d_K| still possible given what is resolved so far
        slack = 1
        for p, e in primes:
            slack *= p ** (2 * (e // 2))
        floor_dk = abs(D) // slack
        if floor_dk > bound:
            return None
    dk = sign * extra
    local = []
    orders = []
    # primes with the most room first: they decide the early exit quickest
    for p, e in sorted(primes, key=lambda pe: -pe[0] ** (pe[1] // 2)):
        if e == 1:
            res = LocalOrderResult(p, 1, 0, 1)
        else:
            res, order = _local(f, p, D)
            if order is not None:
                orders.append((p, order))
            if bound is not None:
                slack //= p ** (2 * (e // 2))
                floor_dk = floor_dk * p ** (2 * (e // 2) - 2 * res.v_index)
                if floor_dk > bound:
                    return None
        local.append(res)
        dk *= p ** res.v_dk
    local.sort(key=lambda r: r.p)
    orders.sort(key=lambda po: po[0])
    return FieldDisc(dk, certified, D, tuple(local), extra, tuple(orders))


def integral_basis(f, fd=None):
    """Z-basis of O_K as (rows, den): element i is (sum_j rows[i][j] x^j) / den.

    ``fd`` is a FieldDisc for f; rows are in upper-triangular normal form.
    """
    n = len(f) - 1
    if fd is None:
        fd = field_discriminant(f)
    pieces = []
    cached = dict(fd.orders)
    for res in fd.local:
        if res.v_index:
            order = cached.get(res.p)
            if order is None:
                order, _ = p_maximal_order(f, res.p)
            pieces.append((order.basis, order.den))
    if not pieces:
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)], 1
    den = 1
    for _, d in pieces:
        den = den * d // gcd(den, d)
    rows = [[den if j == i else 0 for j in range(n)] for i in range(n)]
    for basis, d in pieces:
        s = den // d
        rows.extend([c * s for c in b] for b in basis)
    h = hnf(rows, n)
    g = den
    for r in h:
        for c in r:
            g = gcd(g, c)
    if g > 1:
        h = [[c // g for c in r] for r in h]
        den //= g
    return h, den
