"""
Closed forms of the local power series: the Euler factor L_{m,p}, the
Koecher-Maass series P_m, the zeta sums zeta_m and Z_{m,*}, the
Rankin-Selberg series H_m and its two ramified parts, plus the linear
transforms linking \\tilde P, Q and R.

Each constructor takes ``variant``: 'literal' builds the display as stated,
'calibrated' the form that agrees with the class-sum oracle.  The exponent
changes made by 'calibrated' are returned as ``Delta`` entries on the family.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from hermitian_periods.exceptions import InvalidInput

from exact_algebra.laurent import LaurentPoly, p_power
from exact_algebra.qpoch import phi_m, pochhammer
from exact_algebra.series import TruncatedSeries, one, rational_series

from .families import Delta, SeriesFamily, check_variant

logger = logging.getLogger('series_identities')

X = LaurentPoly.var('X')
Y = LaurentPoly.var('Y')
t = LaurentPoly.var('t')
MAX_DEGREE = 3


def _check_degree(m: int, smallest: int = 1):
    if not smallest <= m <= MAX_DEGREE:
        raise InvalidInput(f"closed forms are built for {smallest} <= m <= {MAX_DEGREE}, got {m}")


def _inv_phi(q, n: int) -> Fraction:
    return 1 / Fraction(phi_m(q, n))


def _factor(coeff, monomial) -> LaurentPoly:
    """1 - coeff * monomial."""
    return 1 - LaurentPoly.coerce(monomial).scale(coeff)


def _chi(ctx, value: int) -> int:
    return ctx.chi_local(Fraction(value))


def _xy_monomials():
    return {'XY': X * Y, 'XY^-1': X * Y ** -1, 'X^-1Y': X ** -1 * Y, 'X^-1Y^-1': X ** -1 * Y ** -1}


# -- L_{m,p} ------------------------------------------------------------------------

def L_mp(ctx, m: int, order: int, variant: str = 'calibrated', scale=1) -> SeriesFamily:
    """
    L_{m,p}(X, scale * t).  The literal split display has p^{-m+i-1/2} on the
    X^{-1} factor; the calibrated form uses p^{-m/2+i-1/2} on both.
    """
    check_variant(variant)
    _check_degree(m)
    p = ctx.p
    s = t * LaurentPoly.coerce(scale)
    factors = []
    deltas = []
    for i in range(1, m + 1):
        half = Fraction(-m, 2) + i - Fraction(1, 2)
        if ctx.is_inert:
            c = p_power(p, -m + 2 * i - 1)
            factors += [_factor(c, X ** 2 * s ** 2), _factor(c, X ** -2 * s ** 2)]
        elif ctx.is_split:
            c = p_power(p, half)
            c_inv = c if variant == 'calibrated' else p_power(p, -m + i - Fraction(1, 2))
            factors += [_factor(c, X * s)] * 2 + [_factor(c_inv, X ** -1 * s)] * 2
        else:
            c = p_power(p, half)
            factors += [_factor(c, X * s), _factor(c, X ** -1 * s)]
    if ctx.is_split and variant == 'calibrated':
        deltas.append(Delta('X^{-1} factor', 'p^{-m+i-1/2}', 'p^{-m/2+i-1/2}'))
    return SeriesFamily('L_mp', m, ctx, rational_series(1, factors, order), variant=variant, deltas=deltas)


# -- P_m ----------------------------------------------------------------------------

def P_closed(ctx, m: int, order: int, d0: int = 1, variant: str = 'calibrated') -> SeriesFamily:
    check_variant(variant)
    _check_degree(m)
    p = ctx.p
    if ctx.is_inert:
        sign = 1 if m % 2 == 0 else -1
        factors = []
        for i in range(1, m + 1):
            c = sign * Fraction(-p) ** -i
            factors += [_factor(c, t * X), _factor(c, t * X ** -1)]
        body = rational_series(LaurentPoly.constant(_inv_phi(Fraction(-1, p), m)), factors, order)
    elif ctx.is_split:
        factors = []
        for i in range(1, m + 1):
            factors += [_factor(Fraction(1, p ** i), t * X), _factor(Fraction(1, p ** i), t * X ** -1)]
        body = rational_series(LaurentPoly.constant(_inv_phi(Fraction(1, p), m)), factors, order)
    elif m % 2 == 0:
        h = m // 2
        prefactor = t ** (m * ctx.i_p // 2) * LaurentPoly.constant(_inv_phi(Fraction(1, p * p), h) / 2)
        first = [_factor(Fraction(p) ** (-2 * i + 1), t * X) for i in range(1, h + 1)]
        first += [_factor(Fraction(p) ** (-2 * i), t * X ** -1) for i in range(1, h + 1)]
        second = [_factor(Fraction(p) ** (-2 * i), t * X) for i in range(1, h + 1)]
        second += [_factor(Fraction(p) ** (-2 * i + 1), t * X ** -1) for i in range(1, h + 1)]
        body = rational_series(prefactor, first, order) \
            + rational_series(prefactor, second, order).scale(_chi(ctx, (-1) ** h * d0))
    else:
        h = (m + 1) // 2
        prefactor = t ** (h * ctx.i_p + ctx.delta) * LaurentPoly.constant(
            _inv_phi(Fraction(1, p * p), (m - 1) // 2) / 2)
        factors = []
        for i in range(1, h + 1):
            c = Fraction(p) ** (-2 * i + 1)
            factors += [_factor(c, t * X), _factor(c, t * X ** -1)]
        body = rational_series(prefactor, factors, order)
    return SeriesFamily('P', m, ctx, body, d0=d0, variant=variant)


# -- zeta_m and Z_{m,*} ---------------------------------------------------------

def _ramified_kappa(ctx, m: int) -> LaurentPoly:
    p = ctx.p
    if p != 2:
        return LaurentPoly.constant(1)
    if ctx.f == 2:
        return t ** ((m + 1) // 2) * LaurentPoly.constant(Fraction(p) ** (-m * (m + 1) // 2))
    if m % 2:
        return t * LaurentPoly.constant(Fraction(p) ** -m)
    return LaurentPoly.constant(Fraction(p) ** -m)


def zeta_closed(ctx, m: int, order: int, d0: int = 1, variant: str = 'calibrated') -> SeriesFamily:
    """
    zeta_m(d0, t).  In the even ramified case the stated twist p^{-pm/2} is
    replaced by p^{-m/2}, the factor the Z_{m,*} display carries.
    """
    check_variant(variant)
    _check_degree(m, smallest=0)
    p = ctx.p
    deltas = []
    if m == 0:
        return SeriesFamily('zeta', 0, ctx, one(order), d0=d0, variant=variant)
    if ctx.is_inert:
        factors = [_factor(-(Fraction(-1) ** i) * Fraction(p) ** -i, t) for i in range(1, m + 1)]
        body = rational_series(LaurentPoly.constant(_inv_phi(Fraction(-1, p), m)), factors, order)
    elif ctx.is_split:
        factors = [_factor(Fraction(p) ** -i, t) for i in range(1, m + 1)]
        body = rational_series(LaurentPoly.constant(_inv_phi(Fraction(1, p), m)), factors, order)
    else:
        scale = Fraction(p) ** (m * (m + 1) * ctx.f // 2 - m * m * ctx.delta)
        kappa = _ramified_kappa(ctx, m)
        if m % 2 == 0:
            h = m // 2
            prefactor = kappa.scale(scale * _inv_phi(Fraction(1, p * p), h) / 2)
            twist = Fraction(p) ** (-p * m // 2 if variant == 'literal' else -h)
            first = [_factor(Fraction(p) ** (-2 * i - 1), t) for i in range(1, h + 1)]
            second = [_factor(Fraction(p) ** (-2 * i), t) for i in range(1, h + 1)]
            body = rational_series(prefactor, first, order) \
                + rational_series(prefactor, second, order).scale(_chi(ctx, (-1) ** h * d0) * twist)
            if variant == 'calibrated':
                deltas.append(Delta('character twist', 'p^{-pm/2}', 'p^{-m/2}'))
        else:
            prefactor = kappa.scale(scale * _inv_phi(Fraction(1, p * p), (m - 1) // 2) / 2)
            factors = [_factor(Fraction(p) ** (-2 * i + 1), t) for i in range(1, (m + 1) // 2 + 1)]
            body = rational_series(prefactor, factors, order)
    return SeriesFamily('zeta', m, ctx, body, d0=d0, variant=variant, deltas=deltas)


def Z_star(ctx, m: int, order: int, d0: int = 1) -> SeriesFamily:
    """The integral Z_{m,*}(u, d0) as a series in u, as stated."""
    _check_degree(m)
    p = ctx.p
    u = LaurentPoly.var('u')
    q2 = Fraction(1, p * p)
    if ctx.is_inert:
        numerator = pochhammer(Fraction(1, p), q2, (m + 1) // 2) * pochhammer(-q2, q2, m // 2)
        factors = [_factor((-1) ** (m + i) * Fraction(p) ** (i - 1), u) for i in range(1, m // 2 + 1)]
        body = rational_series(numerator, factors, order, 'u')
    elif ctx.is_split:
        numerator = LaurentPoly.constant(phi_m(Fraction(1, p), m))
        factors = [_factor(Fraction(p) ** (i - 1), u) for i in range(1, m // 2 + 1)]
        body = rational_series(numerator, factors, order, 'u')
    else:
        base = pochhammer(Fraction(1, p), q2, (m + 1) // 2).scale(Fraction(1, 2))
        if m % 2:
            prefix = LaurentPoly.constant(1)
            if p == 2:
                prefix = u ** ((m + 1) // 2) if ctx.f == 2 else u
            factors = [_factor(Fraction(p) ** (2 * i - 2), u) for i in range(1, (m + 1) // 2 + 1)]
            body = rational_series(base * prefix, factors, order, 'u')
        else:
            h = m // 2
            prefix = LaurentPoly.constant(1)
            if p == 2:
                prefix = u ** h * LaurentPoly.constant(Fraction(p) ** -h) if ctx.f == 2 \
                    else LaurentPoly.constant(Fraction(p) ** -m)
            first = [_factor(Fraction(p) ** (2 * i - 1), u) for i in range(1, h + 1)]
            second = [_factor(Fraction(p) ** (2 * i - 2), u) for i in range(1, h + 1)]
            twist = _chi(ctx, (-1) ** h * d0) * Fraction(p) ** -h
            body = rational_series(base * prefix, first, order, 'u') \
                + rational_series(base * prefix, second, order, 'u').scale(twist)
    return SeriesFamily('Z_star', m, ctx, body, d0=d0, variant='literal')


def zeta_from_Z(ctx, m: int, order: int, d0: int = 1) -> TruncatedSeries:
    """zeta_m read off Z_{m,*}(p^{-m} t, d0) by the measure comparison."""
    p = ctx.p
    Z = Z_star(ctx, m, order, d0).body
    if ctx.is_inert:
        scale = _inv_phi(Fraction(1, p * p), m)
    elif ctx.is_split:
        scale = _inv_phi(Fraction(1, p), m) ** 2
    else:
        scale = Fraction(p) ** (m * (m + 1) * ctx.f // 2 - m * m * ctx.delta) * _inv_phi(Fraction(1, p), m)
    poly = Z.poly.substitute('u', t.scale(Fraction(1, p ** m)))
    return TruncatedSeries(poly, order, 't').scale(scale)


# -- H_m -------------------------------------------------------------------------------

def _H_even(ctx, m: int, order: int, d0: int, variant: str = 'calibrated'):
    p = ctx.p
    n = m // 2
    mono = _xy_monomials()
    if not ctx.is_ramified:
        base = Fraction(-p) if ctx.is_inert else Fraction(p)
        numerator = LaurentPoly.constant(_inv_phi(1 / base, m))
        for i in range(1, m + 1):
            numerator = numerator * _factor(base ** (-m - i), t ** 2)
        signs = {'XY': -1, 'XY^-1': 1, 'X^-1Y': 1, 'X^-1Y^-1': -1} if ctx.is_inert else dict.fromkeys(mono, 1)
        factors = [
            _factor(signs[key] * base ** (-m + i - 1), mono[key] * t)
            for i in range(1, m + 1) for key in mono
        ]
        return rational_series(numerator, factors, order), []
    parts = _H_ramified_stated if variant == 'literal' else _H_ramified_parts
    H0, H1 = parts(ctx, m, order)
    body = (H0 + H1.scale(_chi(ctx, (-1) ** n * d0))).scale(Fraction(1, 2))
    deltas = []
    if variant == 'calibrated':
        deltas.append(Delta(
            'H^{(0)}, H^{(1)} factors',
            'p^{-2n-2i+1} on X^{\\pm1}Y^{\\pm1}, p^{-2n-2i} on X^{\\mp1}Y^{\\pm1}',
            'p^{-2i+1} and p^{-2i} on all four monomials, swapped between the parts',
        ))
    return body, deltas


def _H_ramified_numerator(ctx, n: int) -> LaurentPoly:
    p = Fraction(ctx.p)
    numerator = t ** (n * ctx.i_p) * LaurentPoly.constant(_inv_phi(1 / (p * p), n))
    for i in range(1, n + 1):
        numerator = numerator * _factor(p ** (-2 * n - 2 * i), t ** 2)
    return numerator


def _H_ramified_parts(ctx, m: int, order: int):
    """
    The two character parts of the even ramified H.  H^{(0)} puts p^{-2i+1}
    on XY and X^{-1}Y^{-1} and p^{-2i} on XY^{-1} and X^{-1}Y; H^{(1)} swaps
    the two rates.  Letting Y grow with t Y fixed turns them into the two
    halves of P_m.
    """
    p = Fraction(ctx.p)
    n = m // 2
    mono = _xy_monomials()
    numerator = _H_ramified_numerator(ctx, n)
    first = []
    second = []
    for i in range(1, n + 1):
        odd, even = p ** (-2 * i + 1), p ** (-2 * i)
        first += [_factor(odd, mono['XY'] * t), _factor(odd, mono['X^-1Y^-1'] * t),
                  _factor(even, mono['XY^-1'] * t), _factor(even, mono['X^-1Y'] * t)]
        second += [_factor(even, mono['XY'] * t), _factor(even, mono['X^-1Y^-1'] * t),
                   _factor(odd, mono['XY^-1'] * t), _factor(odd, mono['X^-1Y'] * t)]
    return rational_series(numerator, first, order), rational_series(numerator, second, order)


def _H_ramified_stated(ctx, m: int, order: int):
    p = Fraction(ctx.p)
    n = m // 2
    numerator = _H_ramified_numerator(ctx, n)
    first = []
    second = []
    for i in range(1, n + 1):
        c = p ** (-2 * n - 2 * i + 1)
        first += [_factor(c, X * Y * t), _factor(c, X ** -1 * Y ** -1 * t)]
        second += [_factor(p ** (-2 * n - 2 * i), X ** -1 * Y * t), _factor(p ** (-2 * n - 2 * i), X * Y ** -1 * t)]
    return rational_series(numerator, first, order), rational_series(numerator, second, order)


def _H_odd(ctx, m: int, order: int, variant: str):
    p = ctx.p
    n = (m - 1) // 2
    mono = _xy_monomials()
    deltas = []
    if ctx.is_inert:
        base = Fraction(-p)
        numerator = LaurentPoly.constant(_inv_phi(1 / base, m))
        for i in range(1, m + 1):
            numerator = numerator * _factor(base ** (-2 * n - i - 1), t ** 2)
        factors = []
        for i in range(1, m + 1):
            factors.append(_factor(-base ** (-2 * n + i - 2), mono['XY'] * t))
            shift = -2 * n + i - (2 if variant == 'calibrated' else 1)
            factors.append(_factor(-base ** shift, mono['XY^-1'] * t))
        upper = m if variant == 'calibrated' else 2 * n
        for i in range(1, upper + 1):
            factors.append(_factor(-base ** (-2 * n + i - 2), mono['X^-1Y'] * t))
            factors.append(_factor(-base ** (-2 * n + i - 2), mono['X^-1Y^-1'] * t))
        if variant == 'calibrated':
            deltas += [
                Delta('XY^{-1} factor', '(-p)^{-2n+i-1}', '(-p)^{-2n+i-2}'),
                Delta('X^{-1}Y^{\\pm1} product range', 'i <= 2n', 'i <= 2n+1'),
            ]
        return rational_series(numerator, factors, order), deltas
    if ctx.is_split:
        numerator = LaurentPoly.constant(_inv_phi(Fraction(1, p), m))
        if variant == 'literal':
            numerator = numerator.scale(Fraction(1, 2))
        else:
            deltas.append(Delta('leading constant', '1/2', '1'))
        for i in range(1, m + 1):
            numerator = numerator * _factor(Fraction(p) ** (-2 * n - i - 1), t ** 2)
        factors = [
            _factor(Fraction(p) ** (-2 * n + i - 2), mono[key] * t)
            for i in range(1, m + 1) for key in mono
        ]
        return rational_series(numerator, factors, order), deltas
    q = Fraction(p)
    numerator = t ** ((n + 1) * ctx.i_p + ctx.delta) * LaurentPoly.constant(_inv_phi(1 / (q * q), n))
    if variant == 'calibrated':
        # the same 1/2 as the odd ramified P_m
        numerator = numerator.scale(Fraction(1, 2))
        deltas.append(Delta('leading constant', '1', '1/2'))
    for i in range(1, n + 2):
        numerator = numerator * _factor(q ** (-2 * n - 2 * i), t ** 2)
    factors = [_factor(q ** (-2 * n + 2 * i - 3), mono[key] * t) for i in range(1, n + 2) for key in mono]
    return rational_series(numerator, factors, order), deltas


def H_closed(ctx, m: int, order: int, d0: int = 1, variant: str = 'calibrated') -> SeriesFamily:
    check_variant(variant)
    _check_degree(m)
    if m % 2 == 0:
        body, deltas = _H_even(ctx, m, order, d0, variant)
    else:
        body, deltas = _H_odd(ctx, m, order, variant)
    return SeriesFamily('H', m, ctx, body, d0=d0, variant=variant, deltas=deltas)


def H_parts(ctx, m: int, order: int):
    """(H^{(0)}, H^{(1)}) with H(d) = (H^{(0)} + chi((-1)^n d) H^{(1)}) / 2, even m at a ramified p."""
    if not ctx.is_ramified or m % 2:
        raise InvalidInput("the H^{(0)}/H^{(1)} split exists for even m at ramified primes")
    _check_degree(m)
    H0, H1 = _H_ramified_parts(ctx, m, order)
    return (
        SeriesFamily('H0', m, ctx, H0),
        SeriesFamily('H1', m, ctx, H1),
    )


# -- \tilde P, Q, R ---------------------------------------------------------------

def tilde_P_from_P(ctx, r: int, P: TruncatedSeries) -> TruncatedSeries:
    """\\tilde P_r(X, Y, t) = P_r(X, t Y^{-1}) times the splitting-dependent product."""
    p = ctx.p
    product = LaurentPoly.constant(1)
    for i in range(1, r + 1):
        if ctx.is_inert:
            product = product * _factor(Fraction(p) ** (-2 * r - 2 + 2 * i), t ** 4)
        elif ctx.is_split:
            product = product * _factor(Fraction(p) ** (-r - 1 + i), t ** 2) ** 2
        else:
            product = product * _factor(Fraction(p) ** (-r - 1 + i), t ** 2)
    return P.substitute_var(Y ** -1) * product


def _inversion_coefficient(ctx, k: int, variant: str) -> Fraction:
    """Coefficient of \\tilde P_{r-k} (or \\tilde P_{r-2k}) in Q_r."""
    p = ctx.p
    if ctx.is_ramified:
        return (-1) ** k * Fraction(p) ** (k - k * k) * _inv_phi(Fraction(1, p * p), k)
    value = (-1) ** k * Fraction(p) ** ((k - k * k) // 2) * _inv_phi(Fraction(ctx.xi, p), k)
    if variant == 'calibrated':
        value *= ctx.xi ** (k * (k - 1) // 2)
    return value


def Q_from_tilde_P(ctx, r: int, tilde_P, variant: str = 'calibrated') -> TruncatedSeries:
    """
    Q_r from \\tilde P_0..\\tilde P_r.  At inert primes the calibrated
    coefficient carries xi^{k(k-1)/2}, making the transform the exact inverse
    of the summation that rebuilds \\tilde P.
    """
    check_variant(variant)
    step = 2 if ctx.is_ramified else 1
    total = None
    for k in range(r // step + 1):
        term = tilde_P[r - step * k].scale(_inversion_coefficient(ctx, k, variant))
        total = term if total is None else total + term
    return total


def tilde_P_from_Q(ctx, m: int, Q) -> TruncatedSeries:
    """\\tilde P_m as the phi-weighted sum of the Q_r with r = m mod (1 or 2)."""
    p = ctx.p
    total = None
    if ctx.is_ramified:
        for r in range(m % 2, m + 1, 2):
            term = Q[r].scale(_inv_phi(Fraction(1, p * p), (m - r) // 2))
            total = term if total is None else total + term
    else:
        for r in range(m + 1):
            term = Q[r].scale(_inv_phi(Fraction(ctx.xi, p), m - r))
            total = term if total is None else total + term
    return total


def inversion_deltas(ctx, variant: str):
    if variant == 'calibrated' and ctx.is_inert:
        return [Delta('Q inversion coefficient', 'p^{(k-k^2)/2}', '(xi_p p)^{(k-k^2)/2}')]
    return []


def _specialize(series: TruncatedSeries, m: int, p: int) -> TruncatedSeries:
    """series(X, p^{-m/2} Y, p^{-m/2} t)."""
    c = p_power(p, Fraction(-m, 2))
    return series.map(lambda coeff: coeff.substitute('Y', Y.scale(c))).substitute_var(LaurentPoly.constant(c))


def R_deltas(ctx, variant: str):
    if variant == 'calibrated':
        return [Delta('R assembly', 'weights (p^l Y^2)^{m-l} prod(1 - (xi p)^i Y^2) on \\tilde P_l',
                      'G(m, r)(p^{-m} Y^2) B(m, r)(p^{-3m/2} Y t) / phi_{m-r} on Q_r')]
    return []


def R_from_tilde_P(ctx, m: int, tilde_P, variant: str = 'calibrated') -> TruncatedSeries:
    """
    R_m(X, Y, t) from \\tilde P_0..\\tilde P_m.  The calibrated form splits the
    class sum by the rank r of the part outside the unimodular block: G_p and
    B_p only depend on r there, and the rest of the sum is Q_r taken at
    (X, p^{-m/2} Y, p^{-m/2} t).
    """
    check_variant(variant)
    if variant == 'literal':
        return _R_stated(ctx, m, tilde_P)
    from siegel_series.polynomials import B_closed, G_closed

    p = ctx.p
    y_argument = (Y ** 2).scale(Fraction(1, p ** m))
    b_argument = (t * Y).scale(p_power(p, Fraction(-3 * m, 2)))
    Q = [Q_from_tilde_P(ctx, r, tilde_P, variant) for r in range(m + 1)]
    if ctx.is_ramified:
        ranks = [(r, _inv_phi(Fraction(1, p * p), (m - r) // 2)) for r in range(m % 2, m + 1, 2)]
    else:
        ranks = [(r, _inv_phi(Fraction(ctx.xi, p), m - r)) for r in range(m + 1)]
    total = None
    for r, weight in ranks:
        factor = G_closed(ctx, m, r).substitute('X', y_argument)
        factor = factor * B_closed(ctx, m, r).substitute('t', b_argument)
        term = _specialize(Q[r], m, p) * factor.scale(weight)
        total = term if total is None else total + term
    return total


def _R_stated(ctx, m: int, tilde_P) -> TruncatedSeries:
    """R_m assembled from \\tilde P_l(X, p^{-m/2} Y, p^{-m/2} t) as stated."""
    p = ctx.p
    total = None
    if not ctx.is_ramified:
        xp = Fraction(ctx.xi * p)
        for l in range(m + 1):
            weight = (Y ** 2).scale(p ** l) ** (m - l) * LaurentPoly.constant(_inv_phi(Fraction(ctx.xi, p), m - l))
            for i in range(1, m - l + 1):
                weight = weight * _factor(xp ** (-l - m - i), t ** 2)
            for i in range(l + 1):
                weight = weight * _factor(xp ** i, Y ** 2)
            term = _specialize(tilde_P[l], m, p) * weight
            total = term if total is None else total + term
        return total
    q = Fraction(p)
    for l in range((m - 1) // 2 + 1 if m % 2 else m // 2 + 1):
        size = 2 * l + 1 if m % 2 else 2 * l
        half = (m - size) // 2
        weight = (Y ** 2).scale(q ** size) ** half * LaurentPoly.constant(_inv_phi(1 / (q * q), half))
        for i in range(l + 1):
            weight = weight * _factor(q ** (2 * i), Y ** 2)
        for i in range(1, half + 1):
            shift = 1 if m % 2 else 0
            weight = weight * _factor(q ** (-2 * l - m - 2 * i + shift), t ** 2)
        term = _specialize(tilde_P[size], m, p) * weight
        total = term if total is None else total + term
    return total


# -- K_m ------------------------------------------------------------------------

def P_from_K(ctx, m: int, K: TruncatedSeries) -> TruncatedSeries:
    """P_m = X^{m e_p - [m/2] f_p} K_m times the inverse of the lattice-count product."""
    p = ctx.p
    factors = []
    for i in range(1, m + 1):
        if ctx.is_inert:
            factors.append(_factor(Fraction(p) ** (2 * i - 2 - 2 * m), t ** 2 * X ** 2))
        elif ctx.is_split:
            factors += [_factor(Fraction(p) ** (i - 1 - m), t * X)] * 2
        else:
            factors.append(_factor(Fraction(p) ** (i - 1 - m), t * X))
    shift = X ** (m * ctx.e - (m // 2) * ctx.f)
    return rational_series(shift, factors, K.order) * K


def K_from_zeta(ctx, m: int, order: int, d0: int = 1, variant: str = 'calibrated') -> SeriesFamily:
    """
    K_m as a combination of zeta_r(d0, t X^{-1}).  At unramified primes the
    literal sign (-t X^{-1})^r and factors 1 - (-p)^{i-1} X^2 are replaced by
    (t X^{-1})^r and the unimodular G factors 1 - tau^{m+i} p^i X^2.
    """
    check_variant(variant)
    _check_degree(m)
    p = ctx.p
    tx = t * X ** -1
    deltas = []
    total = None
    if not ctx.is_ramified:
        for r in range(m + 1):
            weight = LaurentPoly.constant(Fraction(p) ** (-r * r) * _inv_phi(Fraction(ctx.xi, p), m - r))
            if variant == 'literal':
                sign = -1 if ctx.is_inert else 1
                weight = weight * (tx.scale(sign)) ** r
                base = Fraction(-p) if ctx.is_inert else Fraction(p)
                for i in range(r):
                    weight = weight * _factor(base ** (i - 1), X ** 2)
            else:
                weight = weight * tx ** r
                for i in range(r):
                    weight = weight * _factor(ctx.xi ** ((m + i) % 2) * p ** i, X ** 2)
            zeta = zeta_closed(ctx, r, order, d0, variant).body.substitute_var(X ** -1)
            term = zeta * weight
            total = term if total is None else total + term
        if variant == 'calibrated':
            deltas += [
                Delta('sign of t X^{-1}', '(-1)^r' if ctx.is_inert else '1', '1'),
                Delta('G factor', '1 - (xi p)^{i-1} X^2', '1 - tau^{m+i} p^i X^2'),
            ]
        return SeriesFamily('K', m, ctx, total, d0=d0, variant=variant, deltas=deltas)
    from siegel_series.polynomials import G_closed

    q = Fraction(p)
    odd = m % 2
    argument = (X ** 2).scale(Fraction(1, p ** m))
    for r in range((m - 1) // 2 + 1 if odd else m // 2 + 1):
        size = 2 * r + 1 if odd else 2 * r
        half = (m - size) // 2
        weight = LaurentPoly.constant(q ** (-size * size * ctx.i_p) * _inv_phi(1 / (q * q), half))
        weight = weight * tx ** (((m + 1) // 2 + r if odd else m // 2 + r) * ctx.i_p)
        if variant == 'literal':
            for i in range(r):
                weight = weight * _factor(q ** (2 * i - 2), X ** 2)
        else:
            weight = weight * G_closed(ctx, m, size).substitute('X', argument)
        zeta = zeta_closed(ctx, size, order, (-1) ** half * d0, variant).body.substitute_var(X ** -1)
        term = zeta * weight
        total = term if total is None else total + term
    if variant == 'calibrated':
        deltas.append(Delta('G factor', '1 - p^{2i-2} X^2', 'G_p(Theta_{m-r} + p^{i_p} B, p^{-m} X^2)'))
    return SeriesFamily('K', m, ctx, total, d0=d0, variant=variant, deltas=deltas)
