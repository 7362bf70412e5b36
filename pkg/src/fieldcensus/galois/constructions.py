"""Generators for every primitive permutation group of degree 4..11
(plus the transitive quartic/quintic groups), built from their natural actions.

Running this module rewrites data/groups.json.
"""

import itertools
import json
import os

from .groups import closure, from_cycles, group_cycle_types, symmetric_cycle_types, to_cycles

DATA_PATH = os.path.join(os.path.dirname(__file__), "data", "groups.json")


def _perm(n, fn):
    return tuple(fn(i) for i in range(n))


# finite fields F_4, F_8 (bit polynomials) and F_9 (pairs a + b i, i^2 = -1)

def _gf2_mul(a, b, mod, deg):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg:
            a ^= mod
    return r


def _f8_mul(a, b):
    return _gf2_mul(a, b, 0b1011, 3)


def _f8_inv(a):
    for b in range(1, 8):
        if _f8_mul(a, b) == 1:
            return b
    raise ZeroDivisionError


def _f9(a):
    return (a % 3, a // 3)


def _f9i(x):
    return x[0] % 3 + 3 * (x[1] % 3)


def _f9_mul(a, b):
    (x, y), (u, v) = _f9(a), _f9(b)
    return _f9i((x * u - y * v, x * v + y * u))


def _f9_add(a, b):
    (x, y), (u, v) = _f9(a), _f9(b)
    return _f9i((x + u, y + v))


def _f9_inv(a):
    for b in range(1, 9):
        if _f9_mul(a, b) == 1:
            return b
    raise ZeroDivisionError


def _f9_frob(a):
    x, y = _f9(a)
    return _f9i((x, -y))


# projective lines: points 0..q-1 and infinity = q

def _mobius_prime(q, a, b, c, d):
    """x -> (a x + b) / (c x + d) on P^1(F_q), q prime."""
    def f(x):
        if x == q:
            return q if c % q == 0 else a * pow(c, -1, q) % q
        den = (c * x + d) % q
        if den == 0:
            return q
        return (a * x + b) * pow(den, -1, q) % q
    return _perm(q + 1, f)


def _mobius_f8(a, b, c, d):
    def f(x):
        if x == 8:
            return 8 if c == 0 else _f8_mul(a, _f8_inv(c))
        den = _f8_mul(c, x) ^ d
        if den == 0:
            return 8
        return _f8_mul(_f8_mul(a, x) ^ b, _f8_inv(den))
    return _perm(9, f)


def _mobius_f9(a, b, c, d, frob=False):
    def f(x):
        if frob and x != 9:
            x = _f9_frob(x)
        if x == 9:
            return 9 if c == 0 else _f9_mul(a, _f9_inv(c))
        den = _f9_add(_f9_mul(c, x), d)
        if den == 0:
            return 9
        return _f9_mul(_f9_add(_f9_mul(a, x), b), _f9_inv(den))
    return _perm(10, f)


# affine groups on F_p^k, points indexed by base-p digits

def _vec(i, p, k):
    return [(i // p ** j) % p for j in range(k)]


def _idx(v, p):
    return sum((c % p) * p ** j for j, c in enumerate(v))


def _linear(M, p, k):
    def f(i):
        v = _vec(i, p, k)
        return _idx([sum(M[r][c] * v[c] for c in range(k)) for r in range(k)], p)
    return _perm(p ** k, f)


def _translation(t, p, k):
    return _perm(p ** k, lambda i: _idx([a + b for a, b in zip(_vec(i, p, k), t)], p))


def _affine(mats, p, k):
    gens = [_translation([1] + [0] * (k - 1), p, k)]
    gens += [_linear(M, p, k) for M in mats]
    return gens


def _f9_linear(fn):
    """F_3-linear map of F_9 = F_3^2 given as a function on F_9 indices."""
    return _perm(9, fn)


def _cyclic_affine(p, mults):
    gens = [_perm(p, lambda x: (x + 1) % p)]
    gens += [_perm(p, lambda x, a=a: (a * x) % p) for a in mults]
    return gens


def _psl2_11_on_11():
    """Automorphisms of the 2-(11,5,2) biplane of quadratic residues mod 11."""
    Q = {1, 3, 4, 5, 9}
    blocks = {frozenset((q + i) % 11 for q in Q) for i in range(11)}
    triples = set()
    for B in blocks:
        for t in itertools.combinations(sorted(B), 3):
            triples.add(frozenset(t))
    # search one automorphism fixing 0 that is not affine x -> a x
    found = None

    def extend(img):
        nonlocal found
        k = len(img)
        if found is not None:
            return
        if k == 11:
            perm = tuple(img)
            if all(frozenset(perm[x] for x in B) in blocks for B in blocks):
                if not any(all(perm[x] == a * x % 11 for x in range(11)) for a in range(1, 11)):
                    found = perm
            return
        for y in range(11):
            if y in img:
                continue
            ok = True
            for a, b in itertools.combinations(range(k), 2):
                t = frozenset((a, b, k))
                if (t in triples) != (frozenset((img[a], img[b], y)) in triples):
                    ok = False
                    break
            if ok:
                extend(img + [y])

    extend([0])
    return [_perm(11, lambda x: (x + 1) % 11), _perm(11, lambda x: 3 * x % 11), found]


def _sym_on_pairs(n_sym, alternating):
    pairs = list(itertools.combinations(range(n_sym), 2))
    index = {p: i for i, p in enumerate(pairs)}
    if alternating:
        base = [(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)]        # 3-cycles generate A5
    else:
        base = [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)]
    gens = []
    for s in base:
        gens.append(tuple(index[tuple(sorted((s[a], s[b])))] for a, b in pairs))
    return gens


def build_generators():
    """name -> (degree, generators, symmetric-kind or None)."""
    G = {}
    # degree 4 transitive
    G["C4"] = (4, [from_cycles(4, [(1, 2, 3, 4)])], None)
    G["V4"] = (4, [from_cycles(4, [(1, 2), (3, 4)]), from_cycles(4, [(1, 3), (2, 4)])], None)
    G["D4"] = (4, [from_cycles(4, [(1, 2, 3, 4)]), from_cycles(4, [(1, 3)])], None)
    G["A4"] = (4, None, "A")
    G["S4"] = (4, None, "S")
    # degree 5
    G["C5"] = (5, _cyclic_affine(5, []), None)
    G["D5"] = (5, _cyclic_affine(5, [4]), None)
    G["F20"] = (5, _cyclic_affine(5, [2]), None)
    G["A5"] = (5, None, "A")
    G["S5"] = (5, None, "S")
    # degree 6: PSL2(5), PGL2(5) on P^1(F_5)
    G["PSL2(5)"] = (6, [_mobius_prime(5, 1, 1, 0, 1), _mobius_prime(5, 0, 4, 1, 0),
                        _mobius_prime(5, 4, 0, 0, 1)], None)
    G["PGL2(5)"] = (6, G["PSL2(5)"][1] + [_mobius_prime(5, 2, 0, 0, 1)], None)
    G["A6"] = (6, None, "A")
    G["S6"] = (6, None, "S")
    # degree 7
    G["C7"] = (7, _cyclic_affine(7, []), None)
    G["D7"] = (7, _cyclic_affine(7, [6]), None)
    G["F21"] = (7, _cyclic_affine(7, [2]), None)
    G["F42"] = (7, _cyclic_affine(7, [3]), None)
    singer = _perm(8, lambda x: _f8_mul(x, 2))
    transv = _linear([[1, 1, 0], [0, 1, 0], [0, 0, 1]], 2, 3)
    nz = list(range(1, 8))
    G["PSL(3,2)"] = (7, [tuple(nz.index(g[x]) for x in nz) for g in (singer, transv)], None)
    G["A7"] = (7, None, "A")
    G["S7"] = (7, None, "S")
    # degree 8
    add1 = _perm(8, lambda x: x ^ 1)
    G["AGL(1,8)"] = (8, [add1, singer], None)
    G["8T36"] = (8, [add1, singer, _perm(8, lambda x: _f8_mul(x, x))], None)
    G["8T37"] = (8, [_mobius_prime(7, 1, 1, 0, 1), _mobius_prime(7, 0, 6, 1, 0),
                     _mobius_prime(7, 2, 0, 0, 1)], None)
    G["8T43"] = (8, G["8T37"][1] + [_mobius_prime(7, 3, 0, 0, 1)], None)
    G["8T48"] = (8, [add1, singer, transv], None)
    G["A8"] = (8, None, "A")
    G["S8"] = (8, None, "S")
    # degree 9: affine groups 3^2:H on F_9, then PSL2(8), PGammaL2(8)
    t9 = _perm(9, lambda x: _f9_add(x, 1))
    g8 = _f9_linear(lambda x: _f9_mul(x, _f9i((1, 1))))      # 1+i has order 8
    g4 = _f9_linear(lambda x: _f9_mul(x, _f9_mul(_f9i((1, 1)), _f9i((1, 1)))))
    fr = _f9_linear(_f9_frob)
    q8a = _linear([[0, 1], [2, 0]], 3, 2)
    q8b = _linear([[1, 1], [1, 2]], 3, 2)
    d8a = _linear([[1, 0], [0, 2]], 3, 2)
    d8b = _linear([[0, 1], [1, 0]], 3, 2)
    sl_a = _linear([[1, 1], [0, 1]], 3, 2)
    sl_b = _linear([[1, 0], [1, 1]], 3, 2)
    gl_c = _linear([[2, 0], [0, 1]], 3, 2)
    tr = _translation([1, 0], 3, 2)
    G["3^2:4"] = (9, [t9, g4], None)
    G["3^2:Q8"] = (9, [tr, q8a, q8b], None)
    G["3^2:8"] = (9, [t9, g8], None)
    G["9T16"] = (9, [tr, d8a, d8b], None)
    G["3^2:SD16"] = (9, [t9, g8, fr], None)
    G["ASL(2,3)"] = (9, [tr, sl_a, sl_b], None)
    G["AGL(2,3)"] = (9, [tr, sl_a, sl_b, gl_c], None)
    G["PSL2(8)"] = (9, [_mobius_f8(1, 1, 0, 1), _mobius_f8(2, 0, 0, 1), _mobius_f8(0, 1, 1, 0)], None)
    G["9T32"] = (9, G["PSL2(8)"][1] + [_perm(9, lambda x: 8 if x == 8 else _f8_mul(x, x))], None)
    G["A9"] = (9, None, "A")
    G["S9"] = (9, None, "S")
    # degree 10
    G["A5(10)"] = (10, _sym_on_pairs(5, True), None)
    G["S5(10)"] = (10, _sym_on_pairs(5, False), None)
    w = _f9i((1, 1))                       # a non-square in F_9
    sq = _f9_mul(w, w)
    psl = [_mobius_f9(1, 1, 0, 1), _mobius_f9(sq, 0, 0, 1), _mobius_f9(0, 1, 2, 0)]
    G["A6(10)"] = (10, psl, None)
    G["S6(10)"] = (10, psl + [_mobius_f9(1, 0, 0, 1, frob=True)], None)
    G["PGL2(9)"] = (10, psl + [_mobius_f9(w, 0, 0, 1)], None)
    G["M10"] = (10, psl + [_mobius_f9(w, 0, 0, 1, frob=True)], None)
    G["Aut(S6)"] = (10, psl + [_mobius_f9(w, 0, 0, 1), _mobius_f9(1, 0, 0, 1, frob=True)], None)
    G["A10"] = (10, None, "A")
    G["S10"] = (10, None, "S")
    # degree 11
    G["C11"] = (11, _cyclic_affine(11, []), None)
    G["D11"] = (11, _cyclic_affine(11, [10]), None)
    G["F55"] = (11, _cyclic_affine(11, [3]), None)
    G["F110"] = (11, _cyclic_affine(11, [2]), None)
    G["PSL2(11)"] = (11, _psl2_11_on_11(), None)
    G["M11"] = (11, [from_cycles(11, [tuple(range(1, 12))]),
                     from_cycles(11, [(3, 7, 11, 8), (4, 10, 5, 6)])], None)
    G["A11"] = (11, None, "A")
    G["S11"] = (11, None, "S")
    return G


EXPECTED_ORDERS = {
    "C4": 4, "V4": 4, "D4": 8, "C5": 5, "D5": 10, "F20": 20,
    "PSL2(5)": 60, "PGL2(5)": 120, "C7": 7, "D7": 14, "F21": 21, "F42": 42, "PSL(3,2)": 168,
    "AGL(1,8)": 56, "8T36": 168, "8T37": 168, "8T43": 336, "8T48": 1344,
    "3^2:4": 36, "3^2:Q8": 72, "3^2:8": 72, "9T16": 72, "3^2:SD16": 144, "ASL(2,3)": 216,
    "AGL(2,3)": 432, "PSL2(8)": 504, "9T32": 1512,
    "A5(10)": 60, "S5(10)": 120, "A6(10)": 360, "S6(10)": 720, "PGL2(9)": 720, "M10": 720,
    "Aut(S6)": 1440, "C11": 11, "D11": 22, "F55": 55, "F110": 110, "PSL2(11)": 660, "M11": 7920,
}


def build_table():
    out = []
    for name, (n, gens, kind) in build_generators().items():
        if kind is None:
            cts = group_cycle_types(gens)
            gens_txt = [to_cycles(g) for g in gens]
        else:
            cts = symmetric_cycle_types(n, alternating=(kind == "A"))
            gens_txt = None
        out.append({
            "name": name, "degree": n, "order": cts.order, "kind": kind,
            "generators": gens_txt,
            "counts": [[list(t), c] for t, c in cts.counts],
        })
    return out


def main():
    table = build_table()
    for row in table:
        exp = EXPECTED_ORDERS.get(row["name"])
        if exp is not None and exp != row["order"]:
            raise SystemExit(f"{row['name']}: order {row['order']} != {exp}")
    with open(DATA_PATH, "w") as fh:
        json.dump(table, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
