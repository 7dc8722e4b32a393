"""
Imaginary quadratic fields K = Q(sqrt -D), elements of K in the integral
basis {1, w}, and the Kronecker character with its prime decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy
from sympy.ntheory.factor_ import core
from sympy.ntheory.modular import crt

from exact_algebra.quadext import as_fraction
from hermitian_periods.exceptions import InvalidInput


@dataclass(frozen=True)
class FieldData:
    """
    K with discriminant -D and O = Z + Z w, where w^2 = t w - n:
    t = 1, n = (1+D)/4 for D = 3 mod 4 and t = 0, n = D/4 otherwise.
    """
    D: int
    t: int = field(init=False)
    n: int = field(init=False)
    prime_divisors: tuple = field(init=False)
    c_D: int = field(init=False)

    def __post_init__(self):
        D = self.D
        if not is_fundamental(D):
            raise InvalidInput(f"-{D} is not a fundamental discriminant")
        if D % 4 == 3:
            t, n = 1, (1 + D) // 4
        else:
            t, n = 0, D // 4
        object.__setattr__(self, 't', t)
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'prime_divisors', tuple(sorted(sympy.primefactors(D))))
        object.__setattr__(self, 'c_D', 1 if D % 2 == 0 else 0)

    @property
    def Q_D(self):
        return self.prime_divisors

    def element(self, a=0, b=0) -> 'FieldElement':
        return FieldElement(self, as_fraction(a), as_fraction(b))

    @property
    def omega(self) -> 'FieldElement':
        return self.element(0, 1)

    @property
    def sqrt_minus_D(self) -> 'FieldElement':
        return self.element(-self.t, 2)

    def units(self):
        """The finite unit group of O, by exhaustive search of norm-one elements."""
        found = []
        bound = 2
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                x = self.element(a, b)
                if x.norm() == 1:
                    found.append(x)
        return found

    def prime_part(self, q: int) -> int:
        """D_q, the q-primary part of D."""
        part = 1
        rest = self.D
        while rest % q == 0:
            part *= q
            rest //= q
        return part

    def describe(self) -> dict:
        return {'D': self.D, 't': self.t, 'n': self.n, 'Q_D': list(self.prime_divisors), 'c_D': self.c_D}


def is_fundamental(D: int) -> bool:
    if D <= 0:
        return False
    if D % 4 == 3:
        return core(D) == D
    if D % 4 == 0:
        rest = D // 4
        return rest % 4 in (1, 2) and core(rest) == rest
    return False


@lru_cache(maxsize=None)
def make_field(D: int) -> FieldData:
    return FieldData(D)


@dataclass(frozen=True)
class FieldElement:
    field: FieldData
    a: Fraction
    b: Fraction

    def _check(self, other):
        if isinstance(other, FieldElement):
            if other.field.D != self.field.D:
                raise InvalidInput("elements of different fields")
            return other
        return FieldElement(self.field, as_fraction(other), Fraction(0))

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        t, n = self.field.t, self.field.n
        bd = self.b * other.b
        return FieldElement(
            self.field,
            self.a * other.a - n * bd,
            self.a * other.b + self.b * other.a + t * bd,
        )

    __rmul__ = __mul__

    def conj(self) -> 'FieldElement':
        return FieldElement(self.field, self.a + self.field.t * self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.field.t * self.a * self.b + self.field.n * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a + self.field.t * self.b

    def inverse(self) -> 'FieldElement':
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in K")
        c = self.conj()
        return FieldElement(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElement(self.field, Fraction(1), Fraction(0))
        for _ in range(exponent):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.D == other.field.D and self.a == other.a and self.b == other.b
        try:
            return self.b == 0 and self.a == as_fraction(other)
        except InvalidInput:
            return NotImplemented

    def __hash__(self):
        return hash((self.field.D, self.a, self.b))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}w"


def kronecker_chi(field: FieldData, a: int) -> int:
    """The Kronecker symbol (-D / a)."""
    if a == 0:
        return 0
    d = -field.D
    sign = 1
    if a < 0:
        sign = -1  # (d / -1) = -1 for d < 0
        a = -a
    value = sign
    while a % 2 == 0:
        a //= 2
        if d % 2 == 0:
            return 0
        value *= 1 if d % 8 in (1, 7) else -1
    if a == 1:
        return value
    return value * sympy.jacobi_symbol(d % a, a)


def chi_q(field: FieldData, q: int, a: int) -> int:
    """The q-component of chi via the CRT lift a' = a mod D_q, a' = 1 mod D/D_q."""
    if q not in field.prime_divisors:
        raise InvalidInput(f"{q} does not divide D={field.D}")
    Dq = field.prime_part(q)
    rest = field.D // Dq
    if a % q == 0:
        return 0
    lifted = crt([Dq, rest], [a % Dq, 1 % rest])[0] if rest > 1 else a % Dq
    return kronecker_chi(field, int(lifted))


def chi_Q(field: FieldData, Q, a: int) -> int:
    """prod_{q in Q} chi_q(a); the empty product is the constant 1."""
    value = 1
    for q in Q:
        value *= chi_q(field, q, a)
    return value


def chi_Q_prime(field: FieldData, Q, a: int) -> int:
    """The complementary character chi'_Q = prod_{q not in Q} chi_q; chi'_empty = chi."""
    return chi_Q(field, [q for q in field.prime_divisors if q not in set(Q)], a)


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
