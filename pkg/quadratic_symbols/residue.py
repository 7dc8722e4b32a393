"""Arithmetic in O_p / p^level, scalar and vectorized over numpy arrays."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput


class ResidueRing:
    """
    O / p^level O with elements a + b w, w^2 = t w - n.  Every method takes
    and returns coordinate arrays (a, b) reduced mod p^level.
    """

    def __init__(self, ctx, level: int):
        if level < 0:
            raise InvalidInput(f"level must be non-negative, got {level}")
        self.ctx = ctx
        self.level = level
        self.modulus = ctx.p ** level
        self.t = ctx.field.t
        self.n = ctx.field.n

    def __repr__(self):
        return f"ResidueRing({self.ctx.label}, level={self.level})"

    def size(self) -> int:
        return self.modulus ** 2

    def elements(self):
        """Every element, as flat coordinate arrays."""
        if self.size() > self.ctx.budget:
            raise BudgetExceeded(f"O/p^{self.level} at {self.ctx.label}", self.size(), self.ctx.budget)
        grid = np.arange(self.modulus, dtype=np.int64)
        a = np.repeat(grid, self.modulus)
        b = np.tile(grid, self.modulus)
        return a, b

    def add(self, x, y):
        M = self.modulus
        return (x[0] + y[0]) % M, (x[1] + y[1]) % M

    def sub(self, x, y):
        M = self.modulus
        return (x[0] - y[0]) % M, (x[1] - y[1]) % M

    def mul(self, x, y):
        M = self.modulus
        a1, b1 = x
        a2, b2 = y
        bb = (b1 * b2) % M
        return (a1 * a2 - self.n * bb) % M, (a1 * b2 + a2 * b1 + self.t * bb) % M

    def conj(self, x):
        M = self.modulus
        return (x[0] + self.t * x[1]) % M, (-x[1]) % M

    def norm(self, x):
        a, b = x
        return (a * a + self.t * ((a * b) % self.modulus) + self.n * ((b * b) % self.modulus)) % self.modulus

    def trace(self, x):
        return (2 * x[0] + self.t * x[1]) % self.modulus

    def scale(self, c, x):
        M = self.modulus
        return (c * x[0]) % M, (c * x[1]) % M

    def is_unit(self, x):
        """Boolean mask of units of O_p among the given elements."""
        p = self.ctx.p
        if self.ctx.is_split:
            r = self.ctx.root
            first = (x[0] + x[1] * (r % p)) % p
            second = (x[0] + x[1] * ((self.t - r) % p)) % p
            return (first != 0) & (second != 0)
        return self.norm(x) % p != 0

    def units(self):
        a, b = self.elements()
        mask = self.is_unit((a, b))
        return a[mask], b[mask]

    def element(self, a: int, b: int = 0) -> 'ResidueElem':
        return ResidueElem(self, a % self.modulus, b % self.modulus)


@dataclass(frozen=True)
class ResidueElem:
    ring: ResidueRing
    a: int
    b: int

    def _pair(self):
        return (self.a, self.b)

    def _wrap(self, pair) -> 'ResidueElem':
        return ResidueElem(self.ring, int(pair[0]), int(pair[1]))

    def _other(self, other):
        if isinstance(other, ResidueElem):
            return other._pair()
        return (other % self.ring.modulus, 0)

    def __add__(self, other):
        return self._wrap(self.ring.add(self._pair(), self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.ring.sub(self._pair(), self._other(other)))

    def __mul__(self, other):
        return self._wrap(self.ring.mul(self._pair(), self._other(other)))

    __rmul__ = __mul__

    def conj(self) -> 'ResidueElem':
        return self._wrap(self.ring.conj(self._pair()))

    def norm(self) -> int:
        return int(self.ring.norm(self._pair()))

    def trace(self) -> int:
        return int(self.ring.trace(self._pair()))

    def is_unit(self) -> bool:
        return bool(self.ring.is_unit((np.int64(self.a), np.int64(self.b))))

    def __eq__(self, other):
        if isinstance(other, ResidueElem):
            return self.ring.modulus == other.ring.modulus and self._pair() == other._pair()
        if isinstance(other, int):
            return self._pair() == self._other(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.modulus, self.a, self.b))
