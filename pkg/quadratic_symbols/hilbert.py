"""
p-adic Hilbert symbols by bounded solvability search.

(a, b)_p = 1 iff z^2 = a x^2 + b y^2 has a primitive solution in Z_p.  After
folding squares away both exponents are 0 or 1, and a primitive solution
modulo p^3 (odd p) or 2^5 lifts by Hensel's lemma, so a finite search decides.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from hermitian_periods.exceptions import InvalidInput

logger = logging.getLogger('quadratic_symbols')

# Above this prime the (x, y) grid of the search gets large; the symbol is
# then read off the same reduced data with Legendre symbols.
SEARCH_PRIME_LIMIT = 13


def _square_class(value, p: int):
    """(unit part mod squares as an integer, exponent parity) of a nonzero rational."""
    value = Fraction(value)
    if value == 0:
        raise InvalidInput("Hilbert symbol of zero")
    # a/b and a*b differ by the square b^2
    n = value.numerator * value.denominator
    e = sympy.multiplicity(p, n) if n % p == 0 else 0
    unit = n // p ** e
    return unit, e % 2


@lru_cache(maxsize=None)
def _search(a: int, b: int, p: int) -> int:
    level = 5 if p == 2 else 3
    M = p ** level
    residues = np.arange(M, dtype=np.int64)
    squares = (residues * residues) % M
    z_unit = residues % p != 0
    # squares hit by a unit z, and squares hit by some z at all
    unit_square = np.zeros(M, dtype=bool)
    unit_square[squares[z_unit]] = True
    any_square = np.zeros(M, dtype=bool)
    any_square[squares] = True
    x = residues[:, None]
    y = residues[None, :]
    rhs = (a * ((x * x) % M) + b * ((y * y) % M)) % M
    xy_primitive = (x % p != 0) | (y % p != 0)
    solvable = (xy_primitive & any_square[rhs]) | unit_square[rhs]
    return 1 if bool(solvable.any()) else -1


def _legendre(u: int, p: int) -> int:
    return sympy.legendre_symbol(u % p, p)


def hilbert_symbol(a, b, p: int) -> int:
    """The Hilbert symbol (a, b)_p for nonzero rationals a, b and a prime p."""
    if not sympy.isprime(p):
        raise InvalidInput(f"{p} is not prime")
    u, alpha = _square_class(a, p)
    v, beta = _square_class(b, p)
    if p <= SEARCH_PRIME_LIMIT or p == 2:
        return _search(u * p ** alpha, v * p ** beta, p)
    # odd p beyond the search range
    sign = 1
    if alpha and beta and (p - 1) // 2 % 2:
        sign = -1
    if alpha:
        sign *= _legendre(v, p)
    if beta:
        sign *= _legendre(u, p)
    return sign


def is_local_norm(u, D: int, p: int) -> bool:
    """Whether u lies in the norm group of Q_p(sqrt -D)."""
    return hilbert_symbol(u, -D, p) == 1
