"""
Exact special values: Bernoulli numbers, zeta(i), L(i, chi) and the
completed values Gamma_C(i) L(i, chi^i), all as SymbolicReal.
"""

from __future__ import annotations

import logging
from fractions import Fraction

import sympy

from exact_algebra.symbolic import SymbolicReal, gamma_C
from hermitian_periods.exceptions import InvalidInput

logger = logging.getLogger('global_assembly')

PARITIES = ('even', 'odd')


def gen_bernoulli(n: int, field=None) -> Fraction:
    """B_n for the trivial character (B_1 = -1/2), or B_{n, chi} for the character of ``field``."""
    from hermitian_lattices.mass import generalized_bernoulli

    if n < 0:
        raise InvalidInput(f"Bernoulli index must be non-negative, got {n}")
    if field is not None:
        return generalized_bernoulli(field, n)
    if n == 1:
        return Fraction(-1, 2)
    value = sympy.Rational(sympy.bernoulli(n))
    return Fraction(int(value.p), int(value.q))


def parity_of(i: int) -> str:
    return PARITIES[i % 2]


def dirichlet_L(i: int, parity: str | None = None, field=None) -> SymbolicReal:
    """
    L(i, chi^i): zeta(i) for even i, L(i, chi) for odd i.  ``parity`` is
    checked against i when given.
    """
    from hermitian_lattices.mass import l_chi_odd, zeta_even

    if i < 1:
        raise InvalidInput(f"L(i, chi^i) is evaluated at i >= 1, got {i}")
    if parity is not None and parity != parity_of(i):
        raise InvalidInput(f"parity {parity!r} does not match i={i}: zeta at odd i has no exact value here")
    if i % 2 == 0:
        return zeta_even(i)
    if field is None:
        raise InvalidInput("L(i, chi) at odd i needs the field")
    return l_chi_odd(field, i)


def completed_L(i: int, field=None) -> SymbolicReal:
    """\\tilde Lambda(i, chi^i) = Gamma_C(i) L(i, chi^i)."""
    value = gamma_C(i) * dirichlet_L(i, field=field)
    logger.debug(f"Lambda({i}, chi^{i}) = {value}")
    return value


def L_one_chi(field) -> SymbolicReal:
    return dirichlet_L(1, field=field)


def L_numeric(s, i: int, field=None):
    """L(s, chi^i) as an mpmath number at a real s > 1."""
    import mpmath

    from quadratic_symbols.fields import kronecker_chi

    s = mpmath.mpf(s)
    if s <= 1:
        raise InvalidInput(f"L(s, chi^{i}) is evaluated numerically only for s > 1, got {mpmath.nstr(s, 8)}")
    if i % 2 == 0:
        return mpmath.zeta(s)
    if field is None:
        raise InvalidInput("L(s, chi) needs the field")
    return mpmath.dirichlet(s, [kronecker_chi(field, a) for a in range(field.D)])


def L_value(i: int, twist: int, field=None) -> SymbolicReal:
    """
    L(i, chi^twist) at a positive integer: exact when i and twist have the
    same parity, otherwise an approximate SymbolicReal.
    """
    if i % 2 == twist % 2:
        return dirichlet_L(i, field=field)
    logger.debug(f"L({i}, chi^{twist}) has no closed form here; evaluated numerically")
    return SymbolicReal.approximate(L_numeric(i, twist, field))
