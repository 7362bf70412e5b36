import pytest
from hypothesis import assume, given, settings, strategies as st

from fieldcensus.exactmath import discriminant, is_irreducible_over_Q
from fieldcensus.exactmath.linalg import determinant
from fieldcensus.orders import (FactorizationIncomplete, dedekind_is_pmaximal, field_discriminant,
                                integral_basis, p_maximal_order, round2_local)


@pytest.mark.parametrize("f, dk", [
    ([-5, 0, 1], 5),
    ([-2, 0, 1], 8),
    ([1, 0, 1], -4),
    ([-8, -2, -1, 1], -503),           # x^3 - x^2 - 2x - 8: 2 is a common index divisor
    ([-12, 0, 0, 1], -972),
    ([-175, 0, 0, 1], -33075),
    ([-10, 0, 0, 1], -300),
    ([1, 1, 1, 1, 1], 125),
    ([1, 0, 0, 0, 1], 256),
    ([-1, -1, 0, 0, 1], -283),
    ([-2, 0, 0, 1], -108),
    ([-2, 0, 0, 0, 0, 1], 50000),      # 2^4 5^5
])
def test_known_discriminants(f, dk):
    assert field_discriminant(f).d_K == dk


def integral_index(f):
    rows, den = integral_basis(f)
    n = len(f) - 1
    return den ** n // determinant(rows)


def test_integral_basis_sqrt5():
    rows, den = integral_basis([-5, 0, 1])
    assert den == 2 and rows == [[1, 1], [0, 2]]


@st.composite
def irreducible_poly(draw, n=None):
    n = draw(st.integers(2, 6)) if n is None else n
    c = draw(st.lists(st.integers(-12, 12), min_size=n, max_size=n))
    f = c + [1]
    assume(f[0] != 0 and is_irreducible_over_Q(f))
    return f


@settings(max_examples=80, deadline=None)
@given(irreducible_poly())
def test_index_formula(f):
    """disc(f) = d_K * [O_K : Z[x]]^2, with the index read off the integral basis."""
    fd = field_discriminant(f)
    assert fd.certified
    idx = integral_index(f)
    assert discriminant(f) == fd.d_K * idx ** 2
    # Minkowski: |d_K| > 1 for every proper extension of Q
    assert abs(fd.d_K) > 1


@settings(max_examples=80, deadline=None)
@given(irreducible_poly(), st.sampled_from([2, 3, 5, 7]))
def test_dedekind_agrees_with_round2(f, p):
    D = discriminant(f)
    if D % p:
        return
    res = round2_local(f, p, D)
    _, v = p_maximal_order(f, p)
    assert res.v_index == v
    assert (v == 0) == dedekind_is_pmaximal(f, p)


@settings(max_examples=40, deadline=None)
@given(irreducible_poly(4), st.integers(-3, 3))
def test_shift_invariance(f, s):
    """f(x + s) defines the same field."""
    from fieldcensus.exactmath.polys import shift
    g = shift(f, s)
    assert field_discriminant(g).d_K == field_discriminant(f).d_K


def test_bound_early_exit():
    f = [-12, 0, 0, 1]
    assert field_discriminant(f, bound=971) is None
    assert field_discriminant(f, bound=972).d_K == -972


def test_uncertified_cofactor_is_flagged():
    # x^2 - N with N a product of two 40-bit primes and a tiny factoring budget
    p, q = 1099511627791, 1099511627803
    fd = field_discriminant([-(p * q), 0, 1], effort=10)
    assert not fd.certified and fd.unfactored == p * q
    with pytest.raises(FactorizationIncomplete):
        field_discriminant([-(p * q), 0, 1], effort=10, require_certified=True)
