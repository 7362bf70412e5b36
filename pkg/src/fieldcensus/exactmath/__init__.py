"""Exact integer and polynomial arithmetic."""

from .integers import IntFactorization, factor_integer, is_probable_prime, is_square
from .modp import factor as factor_mod_p_full
from .modp import factor_degrees
from .polys import (NonSquarefree, count_real_roots, discriminant, resultant,
                    is_squarefree)
from .roots import PrecisionExhausted, RootBox, complex_roots
from .zassenhaus import factor_over_Q, is_irreducible_over_Q


def factor_mod_p(f, p):
    """Multiset of (irreducible factor degree, multiplicity) of f mod p."""
    return factor_degrees(f, p)


__all__ = [
    "IntFactorization", "NonSquarefree", "PrecisionExhausted", "RootBox",
    "complex_roots", "count_real_roots", "discriminant", "factor_integer",
    "factor_mod_p", "factor_mod_p_full", "factor_over_Q", "is_irreducible_over_Q",
    "is_probable_prime", "is_square", "is_squarefree", "resultant",
]
