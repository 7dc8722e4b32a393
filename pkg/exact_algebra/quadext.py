"""
Elements a + b*sqrt(r) of Q(sqrt r) with exact rational components.

A radicand of 1 stands for plain rationals; such values combine freely
with any radicand.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from hermitian_periods.exceptions import InvalidInput


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InvalidInput(f"cannot use {value!r} as an exact rational")


class QuadExt:
    __slots__ = ('a', 'b', 'radicand')

    def __init__(self, a=0, b=0, radicand=1):
        a = as_fraction(a)
        b = as_fraction(b)
        if radicand < 1:
            raise InvalidInput(f"radicand must be positive, got {radicand}")
        if radicand == 1:
            a, b = a + b, Fraction(0)
        self.a = a
        self.b = b
        self.radicand = radicand if b else 1

    @classmethod
    def coerce(cls, value) -> 'QuadExt':
        if isinstance(value, QuadExt):
            return value
        return cls(as_fraction(value))

    @classmethod
    def sqrt(cls, radicand: int) -> 'QuadExt':
        return cls(0, 1, radicand)

    @classmethod
    def prime_power(cls, p: int, half_exponent) -> 'QuadExt':
        """p**(h) for h an integer or half-integer given as Fraction."""
        h = as_fraction(half_exponent)
        if h.denominator == 1:
            return cls(Fraction(p) ** int(h))
        if h.denominator != 2:
            raise InvalidInput(f"exponent {h} is not a half-integer")
        whole = (h.numerator - 1) // 2
        return cls(0, Fraction(p) ** whole, p)

    def _radicand_with(self, other: 'QuadExt') -> int:
        if self.radicand == 1:
            return other.radicand
        if other.radicand == 1 or other.radicand == self.radicand:
            return self.radicand
        raise InvalidInput(f"mixed radicands {self.radicand} and {other.radicand}")

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b, self._radicand_with(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        r = self._radicand_with(other)
        return QuadExt(
            self.a * other.a + r * self.b * other.b,
            self.a * other.b + self.b * other.a,
            r,
        )

    __rmul__ = __mul__

    def conjugate(self) -> 'QuadExt':
        return QuadExt(self.a, -self.b, self.radicand)

    def norm(self) -> Fraction:
        return self.a * self.a - self.radicand * self.b * self.b

    def inverse(self) -> 'QuadExt':
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt r)")
        c = self.conjugate()
        return QuadExt(c.a / n, c.b / n, self.radicand)

    def __truediv__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadExt(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            other = QuadExt.coerce(other)
        except InvalidInput:
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.a == other.a and self.b == other.b and self.radicand == other.radicand

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.radicand))

    def to_complex(self) -> complex:
        return float(self.a) + float(self.b) * self.radicand ** 0.5

    def __str__(self):
        if self.b == 0:
            return _fmt(self.a)
        return f"{_fmt(self.a)} + {_fmt(self.b)}*sqrt({self.radicand})"

    def __repr__(self):
        return f"QuadExt({self})"


def _fmt(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _operand(value):
    if isinstance(value, QuadExt):
        return value
    if isinstance(value, (int, Rational)):
        return QuadExt(Fraction(value))
    return None
