"""
Partial Euler products of Hecke, adjoint and M-type L-functions with an
interval for the omitted tail.

The tail bound assumes only |alpha_p| <= p^{1/4} at every prime, so each
squared root has modulus at most p^{1/2}.  Where that bound does not
converge the product is returned with ``rigorous`` unset.

Characters follow the convention L(s, chi^i) = zeta(s) for even i: an even
power of chi is trivial at every prime, p | D included.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import mpmath
import sympy
from django.conf import settings

from hermitian_periods.exceptions import InvalidInput, PrecisionError

from .forms import satake

logger = logging.getLogger('global_assembly')

FAMILIES = ('hecke_L', 'adjoint_L', 'M_euler', 'dirichlet_L')
EDGE_MARGIN = mpmath.mpf('0.05')
HALF = mpmath.mpf(1) / 2


@dataclass
class EulerValue:
    family: str
    s: object
    cutoff: int
    value: object
    interval: object
    rigorous: bool

    @property
    def relative_width(self):
        if self.value == 0:
            return mpmath.inf
        return (self.interval.b - self.interval.a) / abs(self.value)

    def scaled(self, factor) -> 'EulerValue':
        """The same product multiplied by a positive constant."""
        factor = mpmath.mpf(factor)
        interval = mpmath.iv.mpf([self.interval.a * factor, self.interval.b * factor])
        return EulerValue(self.family, self.s, self.cutoff, self.value * factor, interval, self.rigorous)

    def to_dict(self) -> dict:
        return {
            'family': self.family,
            's': mpmath.nstr(self.s, 12),
            'cutoff': self.cutoff,
            'value': mpmath.nstr(self.value, 15),
            'interval': [mpmath.nstr(self.interval.a, 15), mpmath.nstr(self.interval.b, 15)],
            'rigorous': self.rigorous,
        }


def _cutoff(cutoff):
    return settings.LATTICE_SETTINGS['EULER_CUTOFF'] if cutoff is None else cutoff


def _primes(cutoff):
    return sympy.primerange(2, cutoff + 1)


def chi_power(field, p: int, i: int) -> int:
    """chi^i(p): 1 for even i, the Kronecker symbol for odd i."""
    from quadratic_symbols.fields import kronecker_chi

    return 1 if i % 2 == 0 else kronecker_chi(field, p)


def _tail_bound(s, cutoff: int, degree: int, growth):
    """Bound on |log prod_{p > cutoff}| when each of ``degree`` roots has modulus <= p^growth."""
    exponent = s - growth
    if exponent <= 1 + EDGE_MARGIN:
        return None
    P = mpmath.mpf(cutoff)
    # sum_{n > P} n^{-exponent} <= P^{1-exponent} / (exponent - 1)
    tail = P ** (1 - exponent) / (exponent - 1)
    return 2 * degree * tail


def _assemble(family, s, cutoff, factors, degree, growth) -> EulerValue:
    """``factors`` yields the inverted local factor at each prime <= cutoff."""
    value = mpmath.mpc(1)
    for local in factors:
        value *= local
    if abs(mpmath.im(value)) > mpmath.mpf(10) ** -20 * abs(value):
        logger.warning(f"{family}({mpmath.nstr(s, 8)}) has imaginary part {mpmath.nstr(mpmath.im(value), 5)}")
    value = mpmath.re(value)
    bound = _tail_bound(s, cutoff, degree, growth)
    if bound is None:
        logger.warning(f"{family} at s={mpmath.nstr(s, 8)}: no tail bound, heuristic cutoff {cutoff}")
        return EulerValue(family, s, cutoff, value, mpmath.iv.mpf([value, value]), False)
    low, high = value * mpmath.exp(-bound), value * mpmath.exp(bound)
    interval = mpmath.iv.mpf([min(low, high), max(low, high)])
    logger.debug(f"{family}({mpmath.nstr(s, 8)}) = {mpmath.nstr(value, 12)} up to p <= {cutoff}")
    return EulerValue(family, s, cutoff, value, interval, True)


def _require_coefficients(f, cutoff):
    if cutoff > f.n_max:
        raise InvalidInput(f"cutoff {cutoff} exceeds the {f.n_max} known coefficients of {f.name or 'the form'}")


# -- Dirichlet ------------------------------------------------------------------

def dirichlet_partial(s, field=None, twist: int = 0, cutoff=None) -> EulerValue:
    """L(s, chi^twist) as a partial product."""
    cutoff = _cutoff(cutoff)
    s = mpmath.mpf(s)
    if twist % 2 and field is None:
        raise InvalidInput("L(s, chi) needs the field")
    if s <= 1 and twist % 2 == 0:
        raise PrecisionError(f"zeta({mpmath.nstr(s, 8)}) is outside the region of convergence")
    factors = (1 / (1 - chi_power(field, p, twist) * mpmath.mpf(p) ** -s) for p in _primes(cutoff))
    return _assemble('dirichlet_L', s, cutoff, factors, 1, 0)


# -- Hecke and adjoint ----------------------------------------------------------------

def hecke_factor(f, p: int, s, twist: int = 0):
    pair = satake(f, p)
    q = mpmath.mpf(p)
    if f.is_level_one:
        x = q ** (-s + f.k - HALF)
        return 1 / ((1 - pair.alpha * x) * (1 - x / pair.alpha))
    x = q ** (-s + f.k)
    if f.level % p == 0:
        return 1 / (1 - pair.alpha * x) if twist % 2 == 0 else mpmath.mpf(1)
    c = chi_power(f.field, p, twist)
    return 1 / ((1 - pair.alpha * x * c) * (1 - f.chi(p) * c * x / pair.alpha))


def hecke_L(s, f, twist: int = 0, cutoff=None) -> EulerValue:
    """L(s, f, chi^twist) with the level-1 or level-D local factors."""
    cutoff = _cutoff(cutoff)
    _require_coefficients(f, cutoff)
    s = mpmath.mpf(s)
    factors = (hecke_factor(f, p, s, twist) for p in _primes(cutoff))
    return _assemble('hecke_L', s, cutoff, factors, 2, f.k + HALF)


def adjoint_factor(f, p: int, s, twist: int = 0, field=None):
    """
    The local factor of L(s, f, Ad, chi^twist).  Level D:
    (1 - alpha^2 chi^{twist+1}(p) x)(1 - alpha^-2 chi^{twist+1}(p) x)(1 - chi^twist(p) x)
    at p prime to D; (1 - x) or (1 - alpha^2 x)(1 - alpha^-2 x) at p | D.
    Level 1: all three roots twisted by chi^twist(p), chi taken from ``field``.
    """
    pair = satake(f, p)
    x = mpmath.mpf(p) ** -mpmath.mpf(s)
    a2 = pair.alpha ** 2
    if f.is_level_one:
        c = chi_power(field, p, twist)
        return 1 / ((1 - a2 * c * x) * (1 - c * x / a2) * (1 - c * x))
    if f.level % p == 0:
        if twist % 2 == 0:
            return 1 / (1 - x)
        return 1 / ((1 - a2 * x) * (1 - x / a2))
    c = chi_power(f.field, p, twist + 1)
    return 1 / ((1 - a2 * c * x) * (1 - c * x / a2) * (1 - chi_power(f.field, p, twist) * x))


def adjoint_L(s, f, twist: int = 0, cutoff=None, field=None) -> EulerValue:
    """L(s, f, Ad, chi^twist); for level 1 the twist character comes from ``field``."""
    cutoff = _cutoff(cutoff)
    _require_coefficients(f, cutoff)
    s = mpmath.mpf(s)
    if f.is_level_one and twist % 2 and field is None:
        raise InvalidInput("the chi-twisted adjoint L-function of a level-1 form needs the field")
    factors = (adjoint_factor(f, p, s, twist, field) for p in _primes(cutoff))
    return _assemble('adjoint_L', s, cutoff, factors, 3, HALF)


# -- M(s, f, Ad, chi^{i-1}, chi_Q) --------------------------------------------------

def M_factor(f, p: int, s, i: int, Q=()):
    """
    At p not in Q the adjoint roots carry chi^i(p) chi_Q(p) and the squared
    Dirichlet factor chi^{i-1}(p) chi_Q(p); at p in Q the chi_Q twist is dropped.
    """
    from quadratic_symbols.fields import chi_Q

    field = f.field
    pair = satake(f, p)
    a2 = pair.alpha ** 2
    x = mpmath.mpf(p) ** -mpmath.mpf(s)
    c = chi_power(field, p, i)
    d = chi_power(field, p, i - 1)
    if p not in Q:
        twist = chi_Q(field, Q, p)
        c, d = c * twist, d * twist
    return 1 / ((1 - a2 * c * x) * (1 - c * x / a2) * (1 - d * x) ** 2)


def M_euler(s, f, i: int, Q=(), cutoff=None) -> EulerValue:
    if f.is_level_one:
        raise InvalidInput("M-type products are built for level-D forms")
    if i < 1:
        raise InvalidInput(f"M(s, f, Ad, chi^(i-1), chi_Q) needs i >= 1, got {i}")
    cutoff = _cutoff(cutoff)
    _require_coefficients(f, cutoff)
    s = mpmath.mpf(s)
    Q = tuple(sorted(Q))
    factors = (M_factor(f, p, s, i, Q) for p in _primes(cutoff))
    return _assemble('M_euler', s, cutoff, factors, 4, HALF)


def M_equals_L_factorwise(f, i: int, Q, s, primes_up_to: int = 100, tolerance=None) -> list:
    """
    Compares the local factors of M(s, f, Ad, chi^{i-1}, chi_Q) and of
    L(s, f, Ad, chi^{i-1}) L(s, chi^{i-1}) at every p <= primes_up_to;
    returns the primes where they differ.  For f_Q = f the list is empty.
    """
    tolerance = mpmath.mpf(10) ** -20 if tolerance is None else tolerance
    field = f.field
    s = mpmath.mpf(s)
    Q = tuple(sorted(Q))
    _require_coefficients(f, primes_up_to)
    bad = []
    for p in _primes(primes_up_to):
        M_p = M_factor(f, p, s, i, Q)
        L_p = adjoint_factor(f, p, s, i - 1) / (1 - chi_power(field, p, i - 1) * mpmath.mpf(p) ** -s)
        if abs(M_p - L_p) > tolerance * abs(L_p):
            bad.append(p)
    if bad:
        logger.info(f"M and L factors differ at {bad[:10]} for Q={Q}, i={i}")
    return bad
