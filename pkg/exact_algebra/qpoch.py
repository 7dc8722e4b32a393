"""q-Pochhammer products and the phi_m family."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

from hermitian_periods.exceptions import BudgetExceeded

from .laurent import LaurentPoly
from .quadext import QuadExt

logger = logging.getLogger('exact_algebra')

MAX_IDENTITY_LENGTH = 8


def _as_poly(value) -> LaurentPoly:
    if isinstance(value, str):
        return LaurentPoly.var(value)
    return LaurentPoly.coerce(value)


def pochhammer(U, q, m: int) -> LaurentPoly:
    """(U, q)_m = prod_{i=1}^{m} (1 - q^{i-1} U)."""
    U, q = _as_poly(U), _as_poly(q)
    result = LaurentPoly.constant(1)
    for i in range(1, m + 1):
        result = result * (1 - q ** (i - 1) * U)
    return result


def phi_m(q, m: int):
    """prod_{i=1}^{m} (1 - q^i); numeric in, numeric out."""
    if isinstance(q, (str, LaurentPoly)):
        q = _as_poly(q)
        result = LaurentPoly.constant(1)
        for i in range(1, m + 1):
            result = result * (1 - q ** i)
        return result
    q = QuadExt.coerce(q)
    result = QuadExt(1)
    for i in range(1, m + 1):
        result = result * (1 - q ** i)
    return result.a if result.is_rational() else result


def phi_mp(q, ctx, m: int):
    """phi_m(q^2), phi_m(q)^2 or phi_m(q) for inert, split, ramified contexts."""
    if ctx.splitting == 'inert':
        return phi_m(q * q if not isinstance(q, str) else _as_poly(q) ** 2, m)
    if ctx.splitting == 'split':
        value = phi_m(q, m)
        return value * value
    return phi_m(q, m)


@dataclass
class IdentityReport:
    length: int
    holds: bool
    difference: str


def verify_q_binomial_identity(length: int) -> IdentityReport:
    """
    Expand both sides of

        prod_{i=1}^{l} (1 - U^{-1} Q q^{1-i}) U^l
          = sum_m phi_l(q^-1)/(phi_{l-m}(q^-1) phi_m(q^-1))
                  prod_{i=1}^{l-m}(1 - Q q^{1-i}) prod_{i=1}^{m}(1 - U q^{i-1}) (-1)^m q^{(m-m^2)/2}

    over Q(q)[U, Q] and report their difference.
    """
    if length > MAX_IDENTITY_LENGTH:
        raise BudgetExceeded('q-binomial identity expansion', length, MAX_IDENTITY_LENGTH)
    q, U, Q = sympy.symbols('q U Q')

    def phi(x, n):
        return sympy.Mul(*[1 - x ** i for i in range(1, n + 1)])

    lhs = sympy.Mul(*[1 - Q * q ** (1 - i) / U for i in range(1, length + 1)]) * U ** length
    rhs = 0
    for m in range(length + 1):
        binom = phi(1 / q, length) / (phi(1 / q, length - m) * phi(1 / q, m))
        rhs += (
            binom
            * sympy.Mul(*[1 - Q * q ** (1 - i) for i in range(1, length - m + 1)])
            * sympy.Mul(*[1 - U * q ** (i - 1) for i in range(1, m + 1)])
            * (-1) ** m
            * q ** sympy.Rational(m - m * m, 2)
        )
    difference = sympy.simplify(sympy.cancel(sympy.expand(lhs - rhs)))
    holds = difference == 0
    logger.info(f"q-binomial identity at l={length}: {'holds' if holds else 'fails'}")
    return IdentityReport(length=length, holds=holds, difference=str(difference))


def q_binomial(q, n: int, k: int) -> Fraction:
    """Gaussian binomial phi_n(q)/(phi_k(q) phi_{n-k}(q)) at a rational q."""
    return Fraction(phi_m(q, n)) / (Fraction(phi_m(q, k)) * Fraction(phi_m(q, n - k)))
