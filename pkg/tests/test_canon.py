import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from fieldcensus.canon import (_is_primitive, canonical_polynomial, exact_charpoly, fields_isomorphic,
                               integral_basis_lattice, lll_gram, short_vectors)
from fieldcensus.exactmath import is_irreducible_over_Q
from fieldcensus.exactmath.polys import negate_var, shift
from fieldcensus.orders import field_discriminant

# the eight totally complex S4 quartics with |d_K| <= 1000, as produced by the census
SMALL_S4 = [
    [1, -1, 0, 0, 1], [1, -1, 1, 0, 1], [1, -2, 2, 0, 1], [2, 1, 2, 1, 1],
    [1, -2, 1, 1, 1], [2, 2, 2, 1, 1], [2, 0, -1, 1, 1], [2, 3, 2, 1, 1],
]
SAME_DISC = ([2, -4, 1, 2, 1], [3, 2, 5, 2, 1])


@st.composite
def quartic(draw):
    c = draw(st.lists(st.integers(-6, 6), min_size=4, max_size=4))
    f = c + [1]
    assume(f[0] != 0 and is_irreducible_over_Q(f))
    return f


def test_gram_of_gaussian_integers():
    _, _, G, _ = integral_basis_lattice([1, 0, 1])
    assert np.allclose(G, np.diag([2.0, 2.0]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=5))
def test_gram_determinant_is_abs_dk(c):
    f = c + [1]
    assume(f[0] != 0 and is_irreducible_over_Q(f))
    fd = field_discriminant(f)
    _, _, G, _ = integral_basis_lattice(f, fd)
    assert np.linalg.det(G) == pytest.approx(abs(fd.d_K), rel=1e-7)
    U, Gr = lll_gram(G)
    assert abs(round(np.linalg.det(U.astype(float)))) == 1
    assert np.linalg.det(Gr) == pytest.approx(abs(fd.d_K), rel=1e-7)


@settings(max_examples=100, deadline=None)
@given(quartic())
def test_idempotent(f):
    c = canonical_polynomial(f)
    assert canonical_polynomial(list(c.poly)).poly == c.poly
    assert field_discriminant(list(c.poly)).d_K == field_discriminant(f).d_K


@settings(max_examples=40, deadline=None)
@given(quartic(), st.integers(-7, 7))
def test_translation_and_sign_invariance(f, s):
    c = canonical_polynomial(f).poly
    assert canonical_polynomial(shift(f, s)).poly == c
    assert canonical_polynomial(negate_var(f)).poly == c


@settings(max_examples=40, deadline=None)
@given(quartic())
def test_canonical_coefficients_within_hunter_style_bounds(f):
    c = canonical_polynomial(f)
    n = len(c.poly) - 1
    for k in range(1, n + 1):
        assert abs(c.poly[n - k]) <= math.comb(n, k) * (c.t2 / k) ** (k / 2) + 1e-6


def test_other_generator_collapses():
    f = [-1, -1, 0, 0, 1]
    # minimal polynomial of x^2 + x in Q[x]/(f)
    g = exact_charpoly(f, [0, 1, 1, 0], 1)
    assert is_irreducible_over_Q(g)
    assert canonical_polynomial(g).poly == canonical_polynomial(f).poly


def _brute_force_min_t2(f):
    """Smallest T2 of a primitive element of O_K by a naive box search."""
    basis, den, G, E = integral_basis_lattice(f)
    lam = np.linalg.eigvalsh(G)[0]
    best = None
    # any element of T2 <= R has squared coordinate norm <= R / lam
    R = canonical_polynomial(f).t2 * (1 + 1e-6)
    r = int(math.isqrt(int(R / lam)) + 1)
    for x in itertools.product(range(-r, r + 1), repeat=len(basis)):
        v = np.array(x, dtype=float)
        t2 = float(v @ G @ v)
        if t2 > R or not any(x):
            continue
        if _is_primitive(v @ E):
            best = t2 if best is None else min(best, t2)
    return best


@pytest.mark.parametrize("f", SMALL_S4)
def test_minimal_t2_against_brute_force(f):
    c = canonical_polynomial(f)
    assert _brute_force_min_t2(f) == pytest.approx(c.t2, rel=1e-9)


def test_fields_isomorphic():
    f = [-1, -1, 0, 0, 1]
    assert fields_isomorphic(f, shift(f, 3))
    assert not fields_isomorphic([1, 1, 1, 1, 1], [1, 0, 0, 0, 1])
    # two S4 quartics sharing d_K = 5056
    f, g = SAME_DISC
    assert field_discriminant(f).d_K == field_discriminant(g).d_K == 5056
    assert not fields_isomorphic(f, g)


def test_short_vectors_count_in_Z2():
    G = np.eye(2)
    vecs = short_vectors(G, 2.0)
    # (1,0),(0,1),(1,1),(1,-1) up to sign
    assert len(vecs) == 4
