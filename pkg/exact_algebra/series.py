"""Truncated power series in one variable with Laurent-polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field

from hermitian_periods.exceptions import InvalidInput

from .laurent import LaurentPoly, _index


class TruncatedSeries:
    """
    Power series sum_{k<=order} c_k v^k with c_k LaurentPoly free of v.

    Negative powers of the series variable are not allowed; closed forms
    with a t-power prefactor multiply by it explicitly.
    """

    __slots__ = ('poly', 'order', 'var')

    def __init__(self, poly, order: int, var: str = 't'):
        poly = LaurentPoly.coerce(poly)
        _index(var)
        if poly.min_degree(var) < 0:
            raise InvalidInput(f"negative power of {var} in a power series")
        self.poly = poly.truncate(var, order)
        self.order = order
        self.var = var

    @classmethod
    def from_coefficients(cls, coefficients, order=None, var='t') -> 'TruncatedSeries':
        coefficients = list(coefficients)
        if order is None:
            order = len(coefficients) - 1
        total = LaurentPoly()
        v = LaurentPoly.var(var)
        for k, c in enumerate(coefficients[:order + 1]):
            total = total + LaurentPoly.coerce(c) * v ** k
        return cls(total, order, var)

    def _aligned(self, other) -> 'TruncatedSeries':
        if isinstance(other, TruncatedSeries):
            if other.var != self.var:
                raise InvalidInput(f"series in {self.var} and {other.var} do not combine")
            return other
        return TruncatedSeries(LaurentPoly.coerce(other), self.order, self.var)

    def coefficient(self, k: int) -> LaurentPoly:
        return self.poly.coefficient(self.var, k)

    def coefficients(self):
        return [self.coefficient(k) for k in range(self.order + 1)]

    def with_order(self, order: int) -> 'TruncatedSeries':
        return TruncatedSeries(self.poly, min(order, self.order), self.var)

    def __add__(self, other):
        other = self._aligned(other)
        return TruncatedSeries(self.poly + other.poly, min(self.order, other.order), self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.poly, self.order, self.var)

    def __sub__(self, other):
        return self + (-self._aligned(other))

    def __rsub__(self, other):
        return self._aligned(other) - self

    def __mul__(self, other):
        other = self._aligned(other)
        order = min(self.order, other.order)
        product = LaurentPoly()
        for i in range(order + 1):
            ci = self.coefficient(i)
            if ci.is_zero():
                continue
            for j in range(order + 1 - i):
                cj = other.coefficient(j)
                if cj.is_zero():
                    continue
                product = product + ci * cj * LaurentPoly.var(self.var, i + j)
        return TruncatedSeries(product, order, self.var)

    __rmul__ = __mul__

    def scale(self, value) -> 'TruncatedSeries':
        return TruncatedSeries(self.poly.scale(value), self.order, self.var)

    def inverse(self) -> 'TruncatedSeries':
        c0 = self.coefficient(0)
        if not c0.is_monomial():
            raise InvalidInput(f"constant term {c0} of the series is not an invertible monomial")
        c0_inv = c0.monomial_inverse()
        h = TruncatedSeries(LaurentPoly.constant(1), self.order, self.var) - self * c0_inv
        result = TruncatedSeries(LaurentPoly.constant(1), self.order, self.var)
        power = result
        for _ in range(self.order):
            power = power * h
            result = result + power
        return result * c0_inv

    def __truediv__(self, other):
        return self * self._aligned(other).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries(LaurentPoly.constant(1), self.order, self.var)
        for _ in range(exponent):
            result = result * self
        return result

    def map(self, func) -> 'TruncatedSeries':
        """Apply a LaurentPoly -> LaurentPoly map to every coefficient."""
        total = LaurentPoly()
        for k, c in enumerate(self.coefficients()):
            total = total + func(c) * LaurentPoly.var(self.var, k)
        return TruncatedSeries(total, self.order, self.var)

    def substitute_var(self, factor) -> 'TruncatedSeries':
        """v -> factor * v for a v-free factor (monomials allowed to carry X, Y, sqrt p)."""
        factor = LaurentPoly.coerce(factor)
        if factor.degree(self.var) or factor.min_degree(self.var):
            raise InvalidInput("substitution factor must not involve the series variable")
        total = LaurentPoly()
        for k, c in enumerate(self.coefficients()):
            total = total + c * factor ** k * LaurentPoly.var(self.var, k)
        return TruncatedSeries(total, self.order, self.var)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.poly.truncate(self.var, order) == other.poly.truncate(self.var, order)

    def __hash__(self):
        return hash((self.poly, self.order, self.var))

    def diff(self, other: 'TruncatedSeries') -> 'SeriesDiff':
        order = min(self.order, other.order)
        for k in range(order + 1):
            delta = self.coefficient(k) - other.coefficient(k)
            if not delta.is_zero():
                return SeriesDiff(first_mismatch=k, monomials=[
                    (str(LaurentPoly({e: 1})), str(c)) for e, c in delta.sorted_terms()
                ])
        return SeriesDiff()

    def __str__(self):
        return f"{self.poly} + O({self.var}^{self.order + 1})"

    def __repr__(self):
        return f"TruncatedSeries({self})"


@dataclass
class SeriesDiff:
    first_mismatch: int = None
    monomials: list = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return self.first_mismatch is None


def one(order: int, var: str = 't') -> TruncatedSeries:
    return TruncatedSeries(LaurentPoly.constant(1), order, var)


def rational_series(numerator, denominator_factors, order: int, var: str = 't') -> TruncatedSeries:
    """numerator / prod(denominator_factors), each factor a LaurentPoly with monomial constant term."""
    result = TruncatedSeries(LaurentPoly.coerce(numerator), order, var)
    for f in denominator_factors:
        result = result / TruncatedSeries(LaurentPoly.coerce(f), order, var)
    return result


def product_series(factors, order: int, var: str = 't') -> TruncatedSeries:
    result = one(order, var)
    for f in factors:
        result = result * TruncatedSeries(LaurentPoly.coerce(f), order, var)
    return result
