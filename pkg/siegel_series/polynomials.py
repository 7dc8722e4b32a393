"""
Siegel series polynomials: F_p(T, X) recovered from character sums or from
the overlattice expansion, the Laurent polynomials \\tilde F, the G_p and
\\tilde G_p sums over reduced matrices, B_p(T, t) and the Andrianov series
S_p(T, X, t).

Matrices are stored in \\tilde Her_m(O_p); F0(T) denotes F_p(p^{-e_p} T, X).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from hermitian_periods.exceptions import (
    BudgetExceeded, FunctionalEquationError, InvalidInput, ResidualError,
)

from exact_algebra.laurent import LaurentPoly
from exact_algebra.series import TruncatedSeries

from .character_sums import ord_gamma, siegel_partial

logger = logging.getLogger('siegel_series')

ROUTES = ('auto', 'character', 'overlattice')
CLOSED_FORM_VARIANTS = ('calibrated', 'literal')

X = LaurentPoly.var('X')


def tau_power(ctx, j: int) -> int:
    """tau_p^j: 1 for even j, xi_p for odd j."""
    return 1 if j % 2 == 0 else ctx.xi


def normalizing_product(ctx, m: int, var: str = 'u') -> LaurentPoly:
    """prod_{i<=[(m-1)/2]} (1 - p^{2i} u) prod_{1<=i<=[m/2]} (1 - xi p^{2i-1} u)."""
    p = ctx.p
    u = LaurentPoly.var(var)
    result = LaurentPoly.constant(1)
    for i in range((m - 1) // 2 + 1):
        result = result * (1 - u.scale(p ** (2 * i)))
    for i in range(1, m // 2 + 1):
        result = result * (1 - u.scale(ctx.xi * p ** (2 * i - 1)))
    return result


def gamma_hat(T) -> Fraction:
    """gamma(p^{-e} T) = (-D)^{[m/2]} det(T) / p^{e m}."""
    ctx = T.ctx
    return Fraction(-ctx.D) ** (T.m // 2) * T.det() / ctx.p ** (ctx.e * T.m)


@dataclass(frozen=True)
class SiegelPolynomial:
    T: object
    F: LaurentPoly
    ord_gamma: int
    route: str
    depths: tuple = field(default=())

    @property
    def ctx(self):
        return self.T.ctx

    def tilde(self) -> LaurentPoly:
        """X^{ord gamma} F(p^{-m} X^{-2})."""
        m = self.T.m
        value = LaurentPoly.monomial(Fraction(1, self.ctx.p ** m), X=-2)
        return self.F.substitute('X', value) * X ** self.ord_gamma

    def to_dict(self) -> dict:
        return {
            'T': self.T.to_dict(),
            'F': str(self.F),
            'tilde_F': str(self.tilde()),
            'ord_gamma': self.ord_gamma,
            'route': self.route,
            'depths': list(self.depths),
        }


# -- functional equations ----------------------------------------------------

def functional_equations(T, tilde: LaurentPoly):
    """The functional equations that apply to T, each as (name, holds)."""
    from quadratic_symbols.hilbert import hilbert_symbol

    ctx = T.ctx
    inverted = tilde.invert('X')
    results = []
    if T.m % 2:
        results.append(('X -> 1/X', inverted == tilde))
        return results
    sign = hilbert_symbol(-ctx.D, gamma_hat(T), ctx.p)
    results.append((f'X -> 1/X with sign {sign}', inverted == tilde.scale(sign)))
    if not ctx.is_ramified:
        twisted = tilde.substitute('X', LaurentPoly.monomial(ctx.xi, X=-1))
        results.append((f'X -> {ctx.xi}/X', twisted == tilde))
    return results


def check_functional_equations(T, tilde: LaurentPoly):
    results = functional_equations(T, tilde)
    failed = [name for name, holds in results if not holds]
    if failed:
        raise FunctionalEquationError(f"\\tilde F({T!r}) = {tilde} violates {', '.join(failed)}")
    return results


# -- recovery of F -------------------------------------------------------------

def _recover_by_characters(T) -> SiegelPolynomial:
    ctx = T.ctx
    d = ord_gamma(T)
    norm = TruncatedSeries(normalizing_product(ctx, T.m), d + 2, 'u')
    fits = []
    for N in (d + 1, d + 2):
        try:
            partial = siegel_partial(T, N)
        except BudgetExceeded as exc:
            if not fits:
                raise
            logger.warning(f"Depth {N} for {T!r} is over budget ({exc.requested}); F checked at depth {N - 1} only")
            break
        quotient = TruncatedSeries(partial, N, 'u') / norm.with_order(N)
        residual = [k for k in range(d + 1, N + 1) if not quotient.coefficient(k).is_zero()]
        if residual:
            raise ResidualError(
                f"F({T!r}) at depth {N}: nonzero coefficients at u^{residual} beyond ord gamma = {d}"
            )
        F = LaurentPoly()
        for k in range(d + 1):
            F = F + quotient.coefficient(k) * X ** k
        fits.append((N, F))
    if len(fits) == 2 and fits[0][1] != fits[1][1]:
        raise ResidualError(f"F({T!r}) differs between depths {fits[0][0]} and {fits[1][0]}")
    F = fits[0][1]
    if F.coefficient('X', 0) != LaurentPoly.constant(1):
        raise ResidualError(f"F({T!r}) = {F} does not have constant term 1")
    return SiegelPolynomial(T, F, d, 'character', tuple(N for N, _ in fits))


def G_closed(ctx, m: int, r: int, variant: str = 'calibrated') -> LaurentPoly:
    """
    G_p(T, X) for T = 1_{m-r} + p B_1 (unramified, split) or
    Theta_{m-r} + p^{i_p} B_1 with B_1 in Her_* (ramified).

    ``literal`` keeps the stated exponents (xi^{i-1}, X^2 and base 2 in the
    ramified case); ``calibrated`` is the form that agrees with the
    character sums.
    """
    if variant not in CLOSED_FORM_VARIANTS:
        raise InvalidInput(f"unknown closed-form variant {variant!r}")
    p = ctx.p
    result = LaurentPoly.constant(1)
    if ctx.is_ramified:
        base, power = (2, 2) if variant == 'literal' else (p, 1)
        for i in range((r - 2) // 2 + 1):
            result = result * (1 - LaurentPoly.monomial(base ** (2 * i + 2 * ((m + 1) // 2)), X=power))
        return result
    for i in range(r):
        if variant == 'literal':
            sign = 1 if ctx.xi == 1 else (-1) ** ((i - 1) % 2)
            result = result * (1 - LaurentPoly.monomial(sign * p ** (m + i), X=2))
        else:
            result = result * (1 - LaurentPoly.monomial(tau_power(ctx, m + i) * p ** (m + i), X=1))
    return result


def _closed_G_of(T) -> LaurentPoly:
    from local_densities.closed_forms import unimodular_split

    r, _ = unimodular_split(T)
    return G_closed(T.ctx, T.m, r)


def _recover_by_overlattices(T) -> SiegelPolynomial:
    """F0(T) = sum over reduced W with T[W^{-1}] in \\tilde Her of (p^m X)^{nu(det W)} G(T[W^{-1}])."""
    from hermitian_lattices.reduced import apply_inverse, reduced_matrices

    ctx = T.ctx
    d = ord_gamma(T)
    step = LaurentPoly.monomial(ctx.p ** T.m, X=1)
    F = LaurentPoly()
    for nu in range(int(T.ord_det()) + 1):
        for W in reduced_matrices(ctx, T.m, nu):
            image = apply_inverse(T, W)
            if image is None or not image.in_tilde_her():
                continue
            F = F + step ** nu * _closed_G_of(image)
    if F.degree('X') > d:
        raise ResidualError(f"overlattice sum for {T!r} has degree {F.degree('X')} > ord gamma = {d}")
    return SiegelPolynomial(T, F, d, 'overlattice')


@lru_cache(maxsize=4096)
def _recover(T, route: str) -> SiegelPolynomial:
    if route == 'character':
        result = _recover_by_characters(T)
    elif route == 'overlattice':
        result = _recover_by_overlattices(T)
    elif T.m > 2:
        result = _recover_by_overlattices(T)
    else:
        try:
            result = _recover_by_characters(T)
        except BudgetExceeded as exc:
            logger.warning(f"Character sums for {T!r} over budget ({exc.requested}); using the overlattice expansion")
            result = _recover_by_overlattices(T)
    check_functional_equations(T, result.tilde())
    logger.info(f"F({T!r}) = {result.F} via {result.route}")
    return result


def recover_F(T, route: str = 'auto') -> SiegelPolynomial:
    """F_p(p^{-e} T, X) for T stored in \\tilde Her_m(O_p)."""
    if route not in ROUTES:
        raise InvalidInput(f"unknown route {route!r}; expected one of {ROUTES}")
    if not T.is_nondegenerate():
        raise InvalidInput("T must be nondegenerate")
    if not T.in_tilde_her():
        raise InvalidInput(f"{T!r} is not in \\tilde Her_{T.m}")
    return _recover(T, route)


def F0(T, route: str = 'auto') -> LaurentPoly:
    return recover_F(T, route).F


def tilde_F(T, route: str = 'auto') -> LaurentPoly:
    return recover_F(T, route).tilde()


def _class_key(T):
    from hermitian_lattices.jordan import normal_form

    try:
        return normal_form(T).representative()
    except InvalidInput:
        return T


def tilde_F0(T, route: str = 'auto') -> LaurentPoly:
    """\\tilde F of T, computed on a normal-form representative of its class."""
    return tilde_F(_class_key(T), route)


# -- G, \tilde G, B ---------------------------------------------------------------

def _strata_terms(T):
    """(W, pi_p(W), T[W^{-1}]) for reduced W in the strata with T[W^{-1}] in \\tilde Her."""
    from hermitian_lattices.reduced import apply_inverse, pi_p, reduced_matrices

    ctx = T.ctx
    nu_max = T.m if ctx.is_ramified else 2 * T.m
    for nu in range(nu_max + 1):
        for W in reduced_matrices(ctx, T.m, nu):
            weight = pi_p(ctx, W)
            if not weight:
                continue
            image = apply_inverse(T, W)
            if image is None or not image.in_tilde_her():
                continue
            yield W, weight, image


def G_poly(T, route: str = 'auto') -> LaurentPoly:
    ctx = T.ctx
    step = LaurentPoly.monomial(ctx.p ** T.m, X=1)
    total = LaurentPoly()
    for W, weight, image in _strata_terms(T):
        total = total + (step ** W.nu * F0(_class_key(image), route)).scale(weight)
    logger.debug(f"G({T!r}) = {total}")
    return total


def tilde_G(T, route: str = 'auto') -> LaurentPoly:
    t = LaurentPoly.var('t')
    total = LaurentPoly()
    for W, weight, image in _strata_terms(T):
        total = total + (t ** W.nu * tilde_F0(image, route)).scale(weight)
    return total


@dataclass(frozen=True)
class GExpansion:
    """The G-sum for T next to \\tilde F0(T, X); the verdict is recorded, not enforced."""
    T: object
    expansion: LaurentPoly
    tilde: LaurentPoly
    terms: int

    @property
    def direct(self) -> bool:
        return self.expansion == self.tilde

    @property
    def inverted(self) -> bool:
        return self.expansion == self.tilde.substitute('X', X ** -1)

    def to_dict(self) -> dict:
        return {
            'expansion': str(self.expansion),
            'tilde_F0': str(self.tilde),
            'terms': self.terms,
            'direct': self.direct,
            'inverted': self.inverted,
        }


def g_expansion(T, route: str = 'auto') -> GExpansion:
    """
    X^{e m - f [m/2]} sum over classes B' of \\tilde Her_m(O_p) with
    ord det B' <= ord det T of
        G_p(B', p^{-m} X^2) X^{ord det T - 2 ord det B'} alpha_p(B', T) / alpha_p(B').
    alpha_p(B', T) is counted; classes that do not represent T drop out.
    """
    from hermitian_lattices.classes import enumerate_classes
    from local_densities.density import alpha, alpha_fast

    ctx, m = T.ctx, T.m
    d = T.ord_det()
    argument = (X ** 2).scale(Fraction(1, ctx.p ** m))
    total = LaurentPoly()
    terms = 0
    for d_prime in range(d + 1):
        for rep in enumerate_classes(ctx, m, d_prime):
            represented = alpha(rep.matrix, T).value
            if not represented:
                continue
            weight = represented / alpha_fast(rep.matrix).value
            G = G_poly(rep.matrix, route).substitute('X', argument)
            total = total + (G * X ** (d - 2 * d_prime)).scale(weight)
            terms += 1
    total = total * X ** (ctx.e * m - ctx.f * (m // 2))
    result = GExpansion(T, total, tilde_F0(T, route), terms)
    if result.direct or result.inverted:
        logger.info(f"G-expansion of {T!r} matches \\tilde F0 (direct={result.direct}, inverted={result.inverted})")
    else:
        logger.warning(f"G-expansion of {T!r} = {total} matches neither orientation of {result.tilde}")
    return result


def B_numerator(ctx, m: int) -> LaurentPoly:
    t2 = LaurentPoly.var('t', 2)
    result = LaurentPoly.constant(1)
    for i in range(m):
        result = result * (1 - t2.scale(tau_power(ctx, m + i) * ctx.p ** (m + i)))
    return result


def B_closed(ctx, m: int, r: int, variant: str = 'calibrated') -> LaurentPoly:
    """B_p(T, t) for T in the normal form of G_closed."""
    if variant not in CLOSED_FORM_VARIANTS:
        raise InvalidInput(f"unknown closed-form variant {variant!r}")
    p = ctx.p
    result = LaurentPoly.constant(1)
    if ctx.is_ramified:
        base = 2 if variant == 'literal' else p
        # the stated lower index agrees with [r/2] for even r
        start = (r - 1) // 2 + 1 if variant == 'literal' else r // 2
        for i in range(start, (m - 2) // 2 + 1):
            result = result * (1 - LaurentPoly.monomial(base ** (2 * i + 2 * ((m + 1) // 2)), t=2))
        return result
    for i in range(r, m):
        result = result * (1 - LaurentPoly.monomial(tau_power(ctx, m + i) * p ** (m + i), t=2))
    return result


@dataclass(frozen=True)
class BPolynomial:
    series: TruncatedSeries
    exact: bool
    polynomial: LaurentPoly | None = None


def B_poly(T, order: int | None = None, route: str = 'auto') -> BPolynomial:
    """prod_i (1 - tau^{m+i} p^{m+i} t^2) / G(T, t^2), as a series and, when it divides, a polynomial."""
    ctx = T.ctx
    G = G_poly(T, route).substitute('X', LaurentPoly.var('t', 2))
    numerator = B_numerator(ctx, T.m)
    bound = numerator.degree('t') + G.degree('t')
    quotient = TruncatedSeries(numerator, bound, 't') / TruncatedSeries(G, bound, 't')
    exact = all(quotient.coefficient(k).is_zero() for k in range(2 * T.m + 1, bound + 1))
    polynomial = quotient.with_order(2 * T.m).poly if exact else None
    if not exact:
        logger.warning(f"B({T!r}): G = {G} does not divide the numerator")
    series = quotient.with_order(order if order is not None else bound)
    return BPolynomial(series, exact, polynomial)


# -- Andrianov series ----------------------------------------------------------------

def andrianov_S(T, order: int, route: str = 'overlattice') -> TruncatedSeries:
    """S_p(T, X, t) = sum over reduced w with nu(det w) <= order of \\tilde F0(T[w]) t^{nu(det w)}."""
    from hermitian_lattices.reduced import apply_forward, reduced_matrices

    ctx = T.ctx
    total = LaurentPoly()
    for nu in range(order + 1):
        coefficient = LaurentPoly()
        for w in reduced_matrices(ctx, T.m, nu):
            coefficient = coefficient + tilde_F0(apply_forward(T, w), route)
        total = total + coefficient * LaurentPoly.var('t', nu)
        logger.debug(f"S({T!r}) coefficient of t^{nu}: {coefficient}")
    return TruncatedSeries(total, order, 't')
