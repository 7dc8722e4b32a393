"""
Local data of K at a prime p: splitting type, conductor exponents, the
prime element, p-adic coordinates and valuations of elements of K.

Every O_p shares the global basis {1, w}. At split primes the two
embeddings of O_p into Z_p are x -> a + b r and x -> a + b (t - r), with r
a root of x^2 - t x + n computed to PADIC_PRECISION digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import sympy
from django.conf import settings

from hermitian_periods.exceptions import InvalidInput

from .fields import FieldData, FieldElement, kronecker_chi, make_field
from .hilbert import hilbert_symbol

SPLIT, INERT, RAMIFIED = 'split', 'inert', 'ramified'


def ord_p(value, p: int):
    """p-adic valuation of a rational; math.inf for zero."""
    value = Fraction(value)
    if value == 0:
        return math.inf
    num, den = value.numerator, value.denominator
    v = 0
    if num % p == 0:
        v += sympy.multiplicity(p, num)
    if den % p == 0:
        v -= sympy.multiplicity(p, den)
    return v


def reduce_rational(value, modulus: int, p: int) -> int:
    """Image of a p-integral rational in Z/modulus."""
    value = Fraction(value)
    if value.denominator % p == 0:
        raise InvalidInput(f"{value} is not {p}-integral")
    return value.numerator * pow(value.denominator, -1, modulus) % modulus


def hensel_root(t: int, n: int, p: int, precision: int) -> int:
    """The root of x^2 - t x + n mod p^precision lifting the smallest root mod p."""
    roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
    if not roots:
        raise InvalidInput(f"x^2 - {t}x + {n} has no root mod {p}")
    r = roots[0]
    modulus = p
    while modulus < p ** precision:
        modulus = min(modulus * modulus, p ** precision)
        derivative = (2 * r - t) % modulus
        r = (r - (r * r - t * r + n) * pow(derivative, -1, modulus)) % modulus
    return r


@dataclass(frozen=True)
class LocalContext:
    field: FieldData
    p: int
    splitting: str
    xi: int
    f: int
    e: int
    i_p: int
    delta: int
    precision: int
    root: int | None = None
    prime_element: FieldElement | None = None
    xi0: int | None = None
    budget: int = 2 ** 26

    # -- descriptors --------------------------------------------------------

    @property
    def D(self) -> int:
        return self.field.D

    @property
    def label(self) -> str:
        return f"D={self.field.D},p={self.p}"

    @property
    def is_ramified(self) -> bool:
        return self.splitting == RAMIFIED

    @property
    def is_split(self) -> bool:
        return self.splitting == SPLIT

    @property
    def is_inert(self) -> bool:
        return self.splitting == INERT

    @property
    def residue_size(self) -> int:
        """Size of the residue field of one component of O_p."""
        return self.p ** 2 if self.is_inert else self.p

    def describe(self) -> dict:
        return {
            'D': self.field.D,
            'p': self.p,
            'splitting': self.splitting,
            'xi': self.xi,
            'f': self.f,
            'e': self.e,
            'i_p': self.i_p,
        }

    def unit_classes(self):
        """N_p: representatives of Z_p^* modulo norms."""
        return [1, self.xi0] if self.is_ramified else [1]

    def with_budget(self, budget: int) -> 'LocalContext':
        return replace(self, budget=budget)

    # -- rational p-adics ---------------------------------------------------

    def ord(self, value):
        return ord_p(value, self.p)

    def chi_local(self, u) -> int:
        """+1 iff the p-adic unit u is a norm from K_p."""
        if not self.is_ramified:
            raise InvalidInput(f"chi_local needs a ramified prime, {self.label} is {self.splitting}")
        if self.ord(u) != 0:
            raise InvalidInput(f"{u} is not a {self.p}-adic unit")
        return hilbert_symbol(u, -self.field.D, self.p)

    def unit_class_of(self, u) -> int:
        """The representative in N_p of the norm class of u."""
        if not self.is_ramified:
            return 1
        return 1 if self.chi_local(u) == 1 else self.xi0

    # -- elements of K_p ----------------------------------------------------

    def is_integral(self, x: FieldElement) -> bool:
        return self.ord(x.a) >= 0 and self.ord(x.b) >= 0

    def reduce(self, x: FieldElement, level: int):
        """(a, b) in (Z/p^level)^2 for x = a + b w in O_p."""
        modulus = self.p ** level
        return reduce_rational(x.a, modulus, self.p), reduce_rational(x.b, modulus, self.p)

    def ramified_coords(self, x: FieldElement):
        """(a', b') with x = a' + b' varpi."""
        pi = self.prime_element
        b1 = x.b / pi.b
        return x.a - b1 * pi.a, b1

    def components(self, x: FieldElement):
        """The two Z_p-components of x at a split prime, as p-adic rationals mod p^precision."""
        modulus = self.p ** self.precision
        conj_root = (self.field.t - self.root) % modulus
        return (
            _component(x.a, x.b, self.root, self.p, self.precision),
            _component(x.a, x.b, conj_root, self.p, self.precision),
        )

    def valuation(self, x: FieldElement):
        """
        Normalized valuation of x in K_p: ord_p of the coordinates when
        inert, the varpi-adic order when ramified, and the pair of component
        valuations when split.
        """
        if x.is_zero():
            return (math.inf, math.inf) if self.is_split else math.inf
        if self.is_inert:
            return min(self.ord(x.a), self.ord(x.b))
        if self.is_ramified:
            a1, b1 = self.ramified_coords(x)
            return min(2 * self.ord(a1), 2 * self.ord(b1) + 1)
        return tuple(_component_valuation(c, self.p, self.precision) for c in self.components(x))

    def ord_norm(self, x: FieldElement):
        """ord_p N_{K_p/Q_p}(x)."""
        return self.ord(x.norm())

    def phi(self, x: FieldElement) -> FieldElement:
        """x * sqrt(-D): the map sending D^{-1} O onto O."""
        return x * self.field.sqrt_minus_D


def _component(a: Fraction, b: Fraction, root: int, p: int, precision: int):
    """(value mod p^precision, shift) with a + b root = value * p^shift."""
    den = math.lcm(a.denominator, b.denominator)
    shift = -ord_p(den, p)
    unit_den = den // p ** (-shift)
    modulus = p ** precision
    num = (a * den).numerator + (b * den).numerator * root
    return (num * pow(unit_den, -1, modulus)) % modulus, shift


def _component_valuation(component, p: int, precision: int):
    """ord_p of one split component; a component vanishing modulo p^precision counts as zero."""
    value, shift = component
    if value == 0:
        return math.inf
    return ord_p(value, p) + shift


def _prime_element(field: FieldData, p: int) -> FieldElement:
    if p != 2:
        return field.sqrt_minus_D
    if field.D % 8 == 0:
        return field.omega
    return field.element(1, 1)


@lru_cache(maxsize=None)
def _context(D: int, p: int, budget: int, precision: int) -> LocalContext:
    field = make_field(D)
    if not sympy.isprime(p):
        raise InvalidInput(f"{p} is not prime")
    delta = 1 if p == 2 else 0
    if D % p == 0:
        f = ord_p(D, p)
        context = dict(
            splitting=RAMIFIED, xi=0, f=f, e=f - delta,
            i_p=0 if (p == 2 and f == 2) else 1,
            prime_element=_prime_element(field, p),
        )
        # smallest positive non-norm unit
        u = 2
        while u % p == 0 or hilbert_symbol(u, -D, p) == 1:
            u += 1
        context['xi0'] = u
    else:
        xi = kronecker_chi(field, p)
        context = dict(splitting=SPLIT if xi == 1 else INERT, xi=xi, f=0, e=0, i_p=1)
        if xi == 1:
            context['root'] = hensel_root(field.t, field.n, p, precision)
    return LocalContext(field=field, p=p, delta=delta, precision=precision, budget=budget, **context)


def splitting_type(field, p: int, budget: int | None = None) -> LocalContext:
    """The local context of K at p; ``field`` may be a FieldData or D."""
    D = field.D if isinstance(field, FieldData) else int(field)
    lattice = settings.LATTICE_SETTINGS
    return _context(
        D, p,
        lattice['ENUMERATION_BUDGET'] if budget is None else budget,
        lattice['PADIC_PRECISION'],
    )


def parse_context(label: str) -> LocalContext:
    """Parse the CLI form ``D=<n>,p=<q>``."""
    try:
        parts = dict(item.split('=') for item in label.replace(' ', '').split(','))
        return splitting_type(int(parts['D']), int(parts['p']))
    except (KeyError, ValueError) as exc:
        raise InvalidInput(f"cannot parse context {label!r}: expected D=<n>,p=<q>") from exc
