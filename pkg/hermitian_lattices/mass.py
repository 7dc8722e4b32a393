"""
The mass M*(T) of a positive definite Hermitian matrix over O, once as a
weighted class count over the genus and once as a product of local
densities.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction

import sympy
from django.conf import settings

from exact_algebra.symbolic import SymbolicReal, gamma_C
from hermitian_periods.exceptions import InvalidInput

from .automorphisms import aut_counts, l_pT, sl_equivalent
from .matrices import GlobalHermitian

logger = logging.getLogger('hermitian_lattices')


def _fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _require_class_number_one(field):
    if field.D not in settings.LATTICE_SETTINGS['CLASS_NUMBER_ONE']:
        raise InvalidInput(f"masses are computed over class-number-one fields, D={field.D} is not one")


def bad_primes(T: GlobalHermitian):
    """Primes dividing D det T."""
    det = T.det()
    primes = set(T.field.prime_divisors)
    primes.update(sympy.primefactors(det.numerator))
    primes.update(sympy.primefactors(det.denominator))
    return sorted(primes)


# -- special values -----------------------------------------------------------

def zeta_even(k: int) -> SymbolicReal:
    """zeta(k) for even k >= 2."""
    if k < 2 or k % 2:
        raise InvalidInput(f"zeta is evaluated at even k >= 2, got {k}")
    j = k // 2
    rational = (-1) ** (j + 1) * _fraction(sympy.bernoulli(k)) * 2 ** k / (2 * math.factorial(k))
    return SymbolicReal(rational, pi_exp=k)


def generalized_bernoulli(field, k: int) -> Fraction:
    """B_{k, chi} = D^{k-1} sum_{a=1}^{D} chi(a) B_k(a / D)."""
    from quadratic_symbols.fields import kronecker_chi

    x = sympy.Symbol('x')
    poly = sympy.bernoulli(k, x)
    total = sympy.Rational(0)
    for a in range(1, field.D + 1):
        c = kronecker_chi(field, a)
        if c:
            total += c * poly.subs(x, sympy.Rational(a, field.D))
    return _fraction(total * sympy.Integer(field.D) ** (k - 1))


def l_chi_odd(field, k: int) -> SymbolicReal:
    """L(k, chi) for odd k >= 1, chi the (odd) character of K."""
    if k < 1 or k % 2 == 0:
        raise InvalidInput(f"L(k, chi) is evaluated at odd k, got {k}")
    D = field.D
    rational = Fraction((-1) ** ((k + 1) // 2) * 2 ** (k - 1), D ** k * math.factorial(k)) * generalized_bernoulli(field, k)
    return SymbolicReal(rational, pi_exp=k, radicand=D)


def partial_l_value(field, k: int, primes=()) -> SymbolicReal:
    """L(k, chi^k) with the Euler factors at ``primes`` removed; chi^k is taken modulo D."""
    from quadratic_symbols.fields import kronecker_chi

    if k % 2 == 0:
        value = zeta_even(k)
        for p in sorted(set(primes) | set(field.prime_divisors)):
            value = value * (1 - Fraction(1, p ** k))
        return value
    value = l_chi_odd(field, k)
    for p in sorted(set(primes)):
        value = value * (1 - Fraction(kronecker_chi(field, p), p ** k))
    return value


# -- class side ---------------------------------------------------------------

def reduced_binary_forms(field, det) -> list:
    """
    Positive definite [[a, z/sqrt(-D)], [conj, b]] with determinant ``det``
    and a the minimum: a <= b, a^2 <= D det / 2, and z/sqrt(-D) within the
    covering radius of aO.  Several forms may share a class.
    """
    from .automorphisms import _small_elements

    det = Fraction(det)
    if det <= 0:
        raise InvalidInput(f"determinant must be positive, got {det}")
    bound = math.isqrt(int(field.D * det / 2))
    forms = []
    for a in range(1, bound + 1):
        # |z / sqrt(-D)|^2 <= a^2 (1 + n) / 2 covers every coset of a O
        for z in _small_elements(field, Fraction(field.D * a * a * (1 + field.n), 2)):
            b = (det + z.norm() / field.D) / a
            if b.denominator != 1 or b < a:
                continue
            forms.append(GlobalHermitian(field, [a, int(b)], [z]))
    logger.debug(f"{len(forms)} reduced candidates of det {det} over D={field.D}")
    return forms


def _distinct_classes(forms):
    classes = []
    for T in forms:
        if not any(T.det() == R.det() and sl_equivalent(R, T) for R in classes):
            classes.append(T)
    return classes


def locally_equivalent(T1: GlobalHermitian, T2: GlobalHermitian, primes) -> bool:
    from quadratic_symbols.local import splitting_type

    from .classes import equivalent

    if T1.det() != T2.det():
        return False
    for p in primes:
        ctx = splitting_type(T1.field, p)
        if not equivalent(T1.local(ctx), T2.local(ctx)):
            return False
    return True


def genus(T: GlobalHermitian) -> list:
    """SL_m(O)-classes in the genus of T (degree <= 2)."""
    field = T.field
    _require_class_number_one(field)
    if not T.is_positive_definite():
        raise InvalidInput("the genus is computed for positive definite T")
    if T.m == 1:
        return [T]
    if T.m != 2:
        raise InvalidInput("the genus is computed for degree <= 2")
    primes = bad_primes(T)
    members = [F for F in reduced_binary_forms(field, T.det()) if locally_equivalent(T, F, primes)]
    classes = _distinct_classes(members)
    if not any(sl_equivalent(C, T) for C in classes):
        raise InvalidInput(f"reduction missed the class of {T!r}; genus enumeration is incomplete")
    logger.info(f"genus of {T!r}: {len(classes)} classes from {len(members)} reduced forms")
    return classes


def mass_via_classes(T: GlobalHermitian) -> Fraction:
    """sum over the genus of 1 / e*(T')."""
    total = Fraction(0)
    for member in genus(T):
        e_star, _ = aut_counts(member)
        total += Fraction(1, e_star)
    return total


# -- density side -------------------------------------------------------------

def local_factor(T: GlobalHermitian, p: int, route: str = 'upsilon') -> Fraction:
    """l_{p,T} times upsilon_p(T) (or alpha_p(T))."""
    from local_densities import density
    from quadratic_symbols.local import splitting_type

    ctx = splitting_type(T.field, p)
    index = l_pT(T.local(ctx))
    plain = T.local(ctx, scaled=False)
    if route == 'upsilon':
        value = density.upsilon(plain).value
    elif route == 'alpha':
        value = density.alpha(plain).value
    else:
        raise InvalidInput(f"unknown mass route {route!r}")
    logger.info(f"local mass factor at {ctx.label}: l = {index}, {route} = {value}")
    return index * value


def mass_via_densities(T: GlobalHermitian, route: str = 'upsilon') -> SymbolicReal:
    """
    M*(T) from the local densities at p | D det T; the factors at the other
    primes are the partial L-values L(i, chi^i), 2 <= i <= m.
    """
    from quadratic_symbols.fields import kronecker_chi

    field = T.field
    _require_class_number_one(field)
    if not T.is_integral():
        raise InvalidInput("the density side of the mass formula needs T with entries in O")
    if not T.is_positive_definite():
        raise InvalidInput("the mass is defined for positive definite T")
    m = T.m
    primes = bad_primes(T)
    value = SymbolicReal(T.det() ** m)
    for i in range(2, m + 1):
        value = value * SymbolicReal.power(field.D, Fraction(i, 2)) * gamma_C(i)
        value = value * partial_l_value(field, i, primes)
    local = Fraction(1)
    for p in primes:
        value = value * (1 - Fraction(kronecker_chi(field, p), p))
        local *= local_factor(T, p, route)
    value = value * Fraction(2) ** (len(field.prime_divisors) - m + 1) / local
    if route == 'alpha':
        # alpha_p = p^{-m(m+1) f_p / 2 + m^2 delta} upsilon_p at p | D
        value = value / (SymbolicReal.power(field.D, Fraction(m * (m + 1), 2)) * Fraction(2) ** (-field.c_D * m * m))
    logger.info(f"mass of {T!r} from densities: {value}")
    return value
