"""
Sparse Laurent polynomials over Q(sqrt p) in a fixed variable set.

Every polynomial lives over the same ordered variable tuple ``VARS`` so that
exponent tuples line up without bookkeeping; unused variables simply carry
exponent zero.
"""

from __future__ import annotations

from fractions import Fraction

from hermitian_periods.exceptions import InvalidInput

from .quadext import QuadExt

VARS = ('t', 'X', 'Y', 'u', 'q', 'U', 'Q')
_INDEX = {name: i for i, name in enumerate(VARS)}
# Printing order puts X, Y before t as in the canonical `coeff * X^a Y^b t^c`.
_PRINT_ORDER = ('X', 'Y', 't', 'u', 'q', 'U', 'Q')
_ZERO = (0,) * len(VARS)


def _index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise InvalidInput(f"unknown variable {name!r}; expected one of {VARS}") from None


class LaurentPoly:
    __slots__ = ('terms',)

    def __init__(self, terms=None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = QuadExt.coerce(coeff)
            if not coeff.is_zero():
                clean[tuple(exps)] = coeff
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value) -> 'LaurentPoly':
        return cls({_ZERO: value})

    @classmethod
    def monomial(cls, coeff=1, **exponents) -> 'LaurentPoly':
        exps = [0] * len(VARS)
        for name, e in exponents.items():
            exps[_index(name)] = int(e)
        return cls({tuple(exps): coeff})

    @classmethod
    def var(cls, name: str, power: int = 1) -> 'LaurentPoly':
        return cls.monomial(1, **{name: power})

    @classmethod
    def coerce(cls, value) -> 'LaurentPoly':
        if isinstance(value, LaurentPoly):
            return value
        return cls.constant(value)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(e == _ZERO for e in self.terms) if self.terms else True

    @property
    def variables(self):
        used = set()
        for exps in self.terms:
            used.update(VARS[i] for i, e in enumerate(exps) if e)
        return tuple(v for v in VARS if v in used)

    def constant_term(self) -> QuadExt:
        return self.terms.get(_ZERO, QuadExt(0))

    def degree(self, name: str) -> int:
        i = _index(name)
        return max((e[i] for e in self.terms), default=0)

    def min_degree(self, name: str) -> int:
        i = _index(name)
        return min((e[i] for e in self.terms), default=0)

    def coefficient(self, name: str, power: int) -> 'LaurentPoly':
        """Terms of ``name``-degree ``power`` with that variable removed."""
        i = _index(name)
        out = {}
        for exps, c in self.terms.items():
            if exps[i] == power:
                stripped = list(exps)
                stripped[i] = 0
                out[tuple(stripped)] = c
        return LaurentPoly(out)

    def truncate(self, name: str, order: int) -> 'LaurentPoly':
        i = _index(name)
        return LaurentPoly({e: c for e, c in self.terms.items() if e[i] <= order})

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return LaurentPoly(out)

    __rmul__ = __mul__

    def scale(self, value) -> 'LaurentPoly':
        value = QuadExt.coerce(value)
        return LaurentPoly({e: c * value for e, c in self.terms.items()})

    def monomial_inverse(self) -> 'LaurentPoly':
        if not self.is_monomial():
            raise InvalidInput(f"{self} is not an invertible monomial")
        (e, c), = self.terms.items()
        return LaurentPoly({tuple(-x for x in e): c.inverse()})

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.monomial_inverse() ** (-exponent)
        result = LaurentPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        other = LaurentPoly.coerce(other)
        return self * other.monomial_inverse()

    # -- substitutions ----------------------------------------------------

    def invert(self, name: str) -> 'LaurentPoly':
        """name -> name^{-1}."""
        i = _index(name)
        out = {}
        for e, c in self.terms.items():
            flipped = list(e)
            flipped[i] = -flipped[i]
            out[tuple(flipped)] = c
        return LaurentPoly(out)

    def negate_variable(self, name: str) -> 'LaurentPoly':
        """name -> -name."""
        i = _index(name)
        return LaurentPoly({e: (-c if e[i] % 2 else c) for e, c in self.terms.items()})

    def substitute(self, name: str, value) -> 'LaurentPoly':
        """Replace ``name`` by a Laurent polynomial; negative powers need a monomial."""
        i = _index(name)
        value = LaurentPoly.coerce(value)
        powers = {}
        out = LaurentPoly()
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            rest = list(e)
            rest[i] = 0
            out = out + LaurentPoly({tuple(rest): c}) * powers[k]
        return out

    def swap(self, first: str, second: str) -> 'LaurentPoly':
        i, j = _index(first), _index(second)
        out = {}
        for e, c in self.terms.items():
            s = list(e)
            s[i], s[j] = s[j], s[i]
            out[tuple(s)] = c
        return LaurentPoly(out)

    def evaluate(self, convert=None, **values):
        """
        Numeric specialization; values may be ints, floats, complex or mpmath
        numbers. ``convert`` maps each QuadExt coefficient into the target
        number type (mpmath callers pass their own converter).
        """
        total = 0
        for e, c in self.terms.items():
            if convert is not None:
                term = convert(c)
            else:
                term = c.to_complex() if not c.is_rational() else c.a
            for name, k in zip(VARS, e):
                if k:
                    if name not in values:
                        raise InvalidInput(f"no value supplied for {name}")
                    term = term * values[name] ** k
            total = total + term
        return total

    def map_coefficients(self, func) -> 'LaurentPoly':
        return LaurentPoly({e: func(c) for e, c in self.terms.items()})

    # -- comparison and printing -----------------------------------------

    def __eq__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except InvalidInput:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for e, c in self.sorted_terms():
            coeff = str(c)
            if not c.is_rational():
                coeff = f"({coeff})"
            powers = []
            for name in _PRINT_ORDER:
                k = e[_index(name)]
                if k:
                    powers.append(name if k == 1 else f"{name}^{k}")
            parts.append(coeff if not powers else f"{coeff} * {' '.join(powers)}")
        return ' + '.join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


X = LaurentPoly.var('X')
Y = LaurentPoly.var('Y')
T = LaurentPoly.var('t')
ONE = LaurentPoly.constant(1)


def p_power(p: int, exponent) -> QuadExt:
    """p**exponent for integer or half-integer exponent, exactly."""
    return QuadExt.prime_power(p, Fraction(exponent))
