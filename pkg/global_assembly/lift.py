"""
Fourier coefficients of the lift I_m(f) over a class-number-one field:

    a(T) = |gamma(T)|^{k - l_0/2} prod_p \\tilde F_p(T, alpha_p),

l_0 = 0 for even m (f of level D, weight 2k+1) and 1 for odd m (f of level
1, weight 2k).  Only p dividing D det T contribute.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath
from django.conf import settings

from exact_algebra.symbolic import SymbolicReal
from hermitian_periods.exceptions import InvalidInput

from .forms import satake

logger = logging.getLogger('global_assembly')


def _to_mp(c):
    value = mpmath.mpf(c.a.numerator) / c.a.denominator
    if c.b:
        value += mpmath.mpf(c.b.numerator) / c.b.denominator * mpmath.sqrt(c.radicand)
    return value


def abs_power(value: Fraction, exponent) -> SymbolicReal:
    """|value|^exponent for a rational value and a half-integer exponent."""
    value = abs(Fraction(value))
    if value == 0:
        raise InvalidInput("|gamma(T)| must be nonzero")
    return SymbolicReal.power(value.numerator, exponent) / SymbolicReal.power(value.denominator, exponent)


def check_form_for_degree(f, m: int, field):
    """Even m takes a level-D form with the character of K, odd m a level-1 form."""
    if field.D not in settings.LATTICE_SETTINGS['CLASS_NUMBER_ONE']:
        raise InvalidInput(f"lift coefficients are computed over class-number-one fields, D={field.D} is not one")
    if m % 2:
        if not f.is_level_one:
            raise InvalidInput(f"odd degree m={m} lifts a level-1 form, got level {f.level}")
    elif f.is_level_one or f.field.D != field.D:
        raise InvalidInput(f"even degree m={m} lifts a form of level {field.D} with the character of -{field.D}")


@dataclass
class LiftCoefficient:
    T: object
    m: int
    gamma: Fraction
    weight_factor: SymbolicReal
    local_factors: dict = dc_field(default_factory=dict)

    @property
    def local_product(self):
        product = mpmath.mpc(1)
        for value in self.local_factors.values():
            product *= value
        return product

    @property
    def value(self):
        return self.weight_factor.numeric() * self.local_product

    @property
    def abs_squared(self):
        return abs(self.value) ** 2

    def to_dict(self) -> dict:
        value = self.value
        return {
            'T': self.T.to_dict(),
            'm': self.m,
            'gamma': str(self.gamma),
            'weight_factor': self.weight_factor.to_dict(),
            'local_factors': {
                str(p): [mpmath.nstr(mpmath.re(v), 15), mpmath.nstr(mpmath.im(v), 15)]
                for p, v in sorted(self.local_factors.items())
            },
            'value': [mpmath.nstr(mpmath.re(value), 15), mpmath.nstr(mpmath.im(value), 15)],
        }


def local_factor(T, f, p: int, route: str = 'auto'):
    """\\tilde F_p(T, alpha_p) for a global T."""
    from quadratic_symbols.local import splitting_type
    from siegel_series.polynomials import tilde_F0

    ctx = splitting_type(T.field, p)
    poly = tilde_F0(T.local(ctx), route)
    alpha = satake(f, p).alpha
    value = poly.evaluate(convert=_to_mp, X=alpha)
    logger.debug(f"\\tilde F_{p}({T!r}) = {poly} at alpha = {mpmath.nstr(alpha, 10)}")
    return mpmath.mpc(value)


def lift_coefficient(T, f, m: int | None = None, route: str = 'auto') -> LiftCoefficient:
    from hermitian_lattices.mass import bad_primes

    m = T.m if m is None else m
    if m != T.m:
        raise InvalidInput(f"T has degree {T.m}, not {m}")
    if not T.is_positive_definite():
        raise InvalidInput("lift coefficients are indexed by positive definite T")
    check_form_for_degree(f, m, T.field)
    gamma = T.gamma()
    exponent = Fraction(f.k) if m % 2 == 0 else Fraction(2 * f.k - 1, 2)
    coefficient = LiftCoefficient(T, m, gamma, abs_power(gamma, exponent))
    for p in bad_primes(T):
        coefficient.local_factors[p] = local_factor(T, f, p, route)
    logger.info(f"a({T!r}) = {mpmath.nstr(coefficient.value, 12)} over primes {sorted(coefficient.local_factors)}")
    return coefficient


def genus_spread(T, f, m: int | None = None, route: str = 'auto'):
    """Largest relative deviation of |a(T')| from |a(T)| over the genus of T."""
    from hermitian_lattices.mass import genus

    reference = abs(lift_coefficient(T, f, m, route).value)
    spread = mpmath.mpf(0)
    for member in genus(T):
        other = abs(lift_coefficient(member, f, m, route).value)
        if reference:
            spread = max(spread, abs(other - reference) / reference)
    return spread
