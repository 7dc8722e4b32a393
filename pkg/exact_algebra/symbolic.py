"""
Exact real constants of the shape  r * pi^a * sqrt(s) * aux.

``r`` is rational, ``a`` an integer or half-integer, ``s`` a square-free
positive integer and ``aux`` an optional approximate positive factor kept as
a logarithm (used for numerically evaluated adjoint L-values). Powers of D
and other integers are folded into (r, s) on construction, so equal values
have equal components.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd

import mpmath
import sympy

from hermitian_periods.exceptions import InvalidInput

from .quadext import as_fraction


def _squarefree_split(n: int):
    """n = square * free with free square-free; returns (sqrt(square), free)."""
    outer, free = 1, 1
    for prime, e in sympy.factorint(n).items():
        outer *= prime ** (e // 2)
        if e % 2:
            free *= prime
    return outer, free


class SymbolicReal:
    __slots__ = ('rational', 'pi_exp', 'radicand', 'aux_log', 'aux_sign')

    def __init__(self, rational=1, pi_exp=0, radicand=1, aux_log=0, aux_sign=1):
        rational = as_fraction(rational)
        if radicand < 1:
            raise InvalidInput(f"radicand must be positive, got {radicand}")
        outer, free = _squarefree_split(radicand) if radicand > 1 else (1, 1)
        self.rational = rational * outer
        self.pi_exp = as_fraction(pi_exp)
        self.radicand = free
        self.aux_log = mpmath.mpf(aux_log)
        self.aux_sign = 1 if aux_sign >= 0 else -1

    # -- constructors -----------------------------------------------------

    @classmethod
    def power(cls, base: int, exponent) -> 'SymbolicReal':
        """base**exponent for a positive integer base and integer/half-integer exponent."""
        exponent = as_fraction(exponent)
        if base <= 0:
            raise InvalidInput(f"base must be positive, got {base}")
        if exponent.denominator not in (1, 2):
            raise InvalidInput(f"exponent {exponent} is not a half-integer")
        whole = exponent.numerator // exponent.denominator
        value = cls(Fraction(base) ** whole)
        if exponent.denominator == 2:
            value = value * cls(1, radicand=base)
        return value

    @classmethod
    def pi_power(cls, exponent) -> 'SymbolicReal':
        return cls(1, pi_exp=exponent)

    @classmethod
    def approximate(cls, value) -> 'SymbolicReal':
        value = mpmath.mpf(value)
        if value == 0:
            return cls(0)
        return cls(1, aux_log=mpmath.log(abs(value)), aux_sign=1 if value > 0 else -1)

    # -- properties -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.aux_log == 0 and self.aux_sign == 1

    def components(self):
        return (self.rational, self.pi_exp, self.radicand, self.aux_log, self.aux_sign)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def coerce(value) -> 'SymbolicReal':
        if isinstance(value, SymbolicReal):
            return value
        return SymbolicReal(as_fraction(value))

    def __mul__(self, other):
        other = SymbolicReal.coerce(other)
        g = gcd(self.radicand, other.radicand)
        product = SymbolicReal(
            self.rational * other.rational * g,
            self.pi_exp + other.pi_exp,
            (self.radicand // g) * (other.radicand // g),
            self.aux_log + other.aux_log,
            self.aux_sign * other.aux_sign,
        )
        return product

    __rmul__ = __mul__

    def inverse(self) -> 'SymbolicReal':
        if self.rational == 0:
            raise ZeroDivisionError("inverse of zero")
        return SymbolicReal(
            1 / (self.rational * self.radicand),
            -self.pi_exp,
            self.radicand,
            -self.aux_log,
            self.aux_sign,
        )

    def __truediv__(self, other):
        return self * SymbolicReal.coerce(other).inverse()

    def __rtruediv__(self, other):
        return SymbolicReal.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = SymbolicReal(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = SymbolicReal.coerce(other)
        except InvalidInput:
            return NotImplemented
        if self.rational == 0 or other.rational == 0:
            return self.rational == other.rational
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def numeric(self, dps: int = 30):
        with mpmath.workdps(dps):
            value = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            value *= mpmath.pi ** (mpmath.mpf(self.pi_exp.numerator) / self.pi_exp.denominator)
            value *= mpmath.sqrt(self.radicand)
            value *= self.aux_sign * mpmath.exp(self.aux_log)
            return +value

    def to_dict(self) -> dict:
        out = {
            'value': _fmt(self.rational),
            'pi_exp': _fmt(self.pi_exp),
            'sqrt': self.radicand,
        }
        if not self.is_exact:
            out['aux'] = mpmath.nstr(self.aux_sign * mpmath.exp(self.aux_log), 15)
        return out

    def __str__(self):
        parts = [_fmt(self.rational)]
        if self.pi_exp:
            parts.append(f"pi^{_fmt(self.pi_exp)}")
        if self.radicand != 1:
            parts.append(f"sqrt({self.radicand})")
        if not self.is_exact:
            parts.append(f"[{mpmath.nstr(self.aux_sign * mpmath.exp(self.aux_log), 12)}]")
        return ' * '.join(parts)

    def __repr__(self):
        return f"SymbolicReal({self})"


def _fmt(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def gamma_C(s: int) -> SymbolicReal:
    """Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s) at a positive integer."""
    if s < 1:
        raise InvalidInput(f"Gamma_C needs a positive integer, got {s}")
    return SymbolicReal(Fraction(2 * factorial(s - 1), 2 ** s), pi_exp=-s)


def gamma_R(s: int) -> SymbolicReal:
    """Gamma_R(s) = pi^{-s/2} Gamma(s/2); odd s absorbs Gamma's sqrt(pi)."""
    if s < 1:
        raise InvalidInput(f"Gamma_R needs a positive integer, got {s}")
    if s % 2 == 0:
        return SymbolicReal(factorial(s // 2 - 1), pi_exp=Fraction(-s, 2))
    # Gamma(s/2) = (s-2)!! / 2^{(s-1)/2} * sqrt(pi)
    double_factorial = 1
    for k in range(s - 2, 0, -2):
        double_factorial *= k
    return SymbolicReal(Fraction(double_factorial, 2 ** ((s - 1) // 2)), pi_exp=Fraction(-s + 1, 2))
