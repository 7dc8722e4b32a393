"""
Class sums over \\tilde Her_m(p^i d0 N(O_p^*), O_p) / GL_m(O_p), truncated at
a fixed t-order.  Every sum is exact: classes come from the local class
enumeration, densities from the fast alpha route and \\tilde F, G, B from the
Siegel series polynomials.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from hermitian_periods.exceptions import InvalidInput

from exact_algebra.laurent import LaurentPoly, p_power
from exact_algebra.series import TruncatedSeries, one

logger = logging.getLogger('series_identities')

X = LaurentPoly.var('X')
Y = LaurentPoly.var('Y')
t = LaurentPoly.var('t')


def _alpha(T) -> Fraction:
    from local_densities.density import alpha_fast
    return alpha_fast(T).value


def class_terms(ctx, m: int, order: int, d0: int = 1):
    """(ord det B, B, alpha_p(B)) for GL classes B with ord det B <= order in the norm class of d0."""
    from hermitian_lattices.classes import enumerate_classes

    for d in range(order + 1):
        for rep in enumerate_classes(ctx, m, d, d0):
            yield d, rep.matrix, _alpha(rep.matrix)


def _series(total: LaurentPoly, order: int) -> TruncatedSeries:
    return TruncatedSeries(total.truncate('t', order), order, 't')


# -- lambda and H ------------------------------------------------------------------

def _pair(A, route):
    from siegel_series.polynomials import tilde_F0

    FX = tilde_F0(A, route)
    return FX * FX.swap('X', 'Y')


def lambda_star(ctx, m: int, i: int, d0: int = 1, route: str = 'auto') -> LaurentPoly:
    """Sum over GL classes A of ord det i of \\tilde F(A, X) \\tilde F(A, Y) / alpha_p(A)."""
    from hermitian_lattices.classes import enumerate_classes

    total = LaurentPoly()
    for rep in enumerate_classes(ctx, m, i, d0):
        total = total + _pair(rep.matrix, route).scale(1 / _alpha(rep.matrix))
    return total


def lambda_sl(ctx, m: int, i: int, d0: int = 1, route: str = 'auto') -> LaurentPoly:
    """The same sum over SL_m(O_p) classes, each weighted by 1 / (l_{p,A} alpha_p(A))."""
    from hermitian_lattices.automorphisms import l_pT
    from hermitian_lattices.classes import enumerate_classes

    total = LaurentPoly()
    for rep in enumerate_classes(ctx, m, i, d0):
        A = rep.matrix
        l = l_pT(A)
        weight = Fraction(1, l) / _alpha(A)
        term = _pair(A, route).scale(weight)
        # the GL class of A is the union of l SL classes
        for _ in range(l):
            total = total + term
        logger.debug(f"{A!r}: {l} SL classes")
    return total


def H_bruteforce(ctx, m: int, order: int, d0: int = 1, route: str = 'auto') -> TruncatedSeries:
    total = LaurentPoly()
    for i in range(order + 1):
        total = total + lambda_star(ctx, m, i, d0, route) * t ** i
    logger.info(f"H_{m}({d0}) at {ctx.label} summed through t^{order}")
    return _series(total, order)


# -- P, zeta, K --------------------------------------------------------------------

def P_bruteforce(ctx, m: int, order: int, d0: int = 1, route: str = 'auto') -> TruncatedSeries:
    from siegel_series.polynomials import tilde_F0

    total = LaurentPoly()
    for d, B, alpha in class_terms(ctx, m, order, d0):
        total = total + (tilde_F0(B, route) * t ** d).scale(1 / alpha)
    return _series(total, order)


def zeta_bruteforce(ctx, m: int, order: int, d0: int = 1) -> TruncatedSeries:
    if ctx.is_ramified:
        raise InvalidInput("the zeta class sum runs over Her_{m,*}, enumerated here at unramified primes only")
    total = LaurentPoly()
    for d, _, alpha in class_terms(ctx, m, order, d0):
        total = total + (t ** d).scale(1 / alpha)
    return _series(total, order)


def K_bruteforce(ctx, m: int, order: int, d0: int = 1, route: str = 'auto') -> TruncatedSeries:
    """Sum of G_p(B, p^{-m} X^2) (t X^{-1})^{ord det B} / alpha_p(B)."""
    from siegel_series.polynomials import G_poly

    argument = (X ** 2).scale(Fraction(1, ctx.p ** m))
    total = LaurentPoly()
    for d, B, alpha in class_terms(ctx, m, order, d0):
        G = G_poly(B, route).substitute('X', argument)
        total = total + (G * (t * X ** -1) ** d).scale(1 / alpha)
    return _series(total, order)


# -- \tilde P and R ------------------------------------------------------------------

def tilde_P_bruteforce(ctx, r: int, order: int, d0: int = 1, route: str = 'auto') -> TruncatedSeries:
    """Sum of \\tilde G_p(B, X, t Y) (t Y^{-1})^{ord det B} / alpha_p(B)."""
    from siegel_series.polynomials import tilde_G

    if r == 0:
        return one(order)
    total = LaurentPoly()
    for d, B, alpha in class_terms(ctx, r, order, d0):
        G = tilde_G(B, route).substitute('t', t * Y)
        total = total + (G * (t * Y ** -1) ** d).scale(1 / alpha)
    return _series(total, order)


def _B_in_t(B, route) -> LaurentPoly:
    from siegel_series.polynomials import B_poly

    result = B_poly(B, route=route)
    return result.polynomial if result.exact else result.series.poly


def R_bruteforce(ctx, m: int, order: int, d0: int = 1, route: str = 'auto') -> TruncatedSeries:
    """
    Sum of \\tilde G_p(B, X, p^{-m} Y t) (t Y^{-1})^{ord det B} B_p(B, p^{-3m/2} Y t)
    G_p(B, p^{-m} Y^2) / alpha_p(B).
    """
    from siegel_series.polynomials import G_poly, tilde_G

    p = ctx.p
    y_argument = (Y ** 2).scale(Fraction(1, p ** m))
    b_argument = (t * Y).scale(p_power(p, Fraction(-3 * m, 2)))
    g_argument = (t * Y).scale(Fraction(1, p ** m))
    total = LaurentPoly()
    for d, B, alpha in class_terms(ctx, m, order, d0):
        term = tilde_G(B, route).substitute('t', g_argument)
        term = term * _B_in_t(B, route).substitute('t', b_argument)
        term = term * G_poly(B, route).substitute('X', y_argument)
        total = total + (term * (t * Y ** -1) ** d).scale(1 / alpha)
    return _series(total, order)


# -- Andrianov series ------------------------------------------------------------------

def S_product(T, order: int, variant: str = 'calibrated') -> TruncatedSeries:
    """B_p(T, p^{-m/2} t) \\tilde G_p(T, X, t) L_{m,p}(X, p^{m/2-1/2} t)."""
    from siegel_series.polynomials import tilde_G

    from .closed_forms import L_mp

    ctx, m = T.ctx, T.m
    B = _B_in_t(T, 'auto').substitute('t', t.scale(p_power(ctx.p, Fraction(-m, 2))))
    L = L_mp(ctx, m, order, variant, scale=p_power(ctx.p, Fraction(m - 1, 2))).body
    return L * _series(B * tilde_G(T), order)
