"""
GL_m(O_p)-classes of \\tilde Her_m(O_p): the equivalence test and the
enumeration of class representatives with a given determinant.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput

from .jordan import class_invariants, det_class, elementary_divisors
from .matrices import LocalHermitian

logger = logging.getLogger('hermitian_lattices')


@dataclass
class ClassRepresentative:
    matrix: LocalHermitian
    ord_det: int
    unit_class: int
    invariants: tuple | None = None

    def to_dict(self) -> dict:
        return {
            'matrix': self.matrix.to_dict(),
            'ord_det': self.ord_det,
            'unit_class': self.unit_class,
        }


# -- equivalence -----------------------------------------------------------------

class _ColumnSearch:
    """
    Search for U in GL_m(O_p / p^L) with A[U] = B mod p^a \\tilde Her, one
    column at a time.
    """

    def __init__(self, A: LocalHermitian, B: LocalHermitian, a: int):
        from local_densities.counting import ALPHA, counting_level
        from quadratic_symbols.residue import ResidueRing

        ctx = A.ctx
        self.ctx = ctx
        self.m = A.m
        self.L = counting_level(A, a, ALPHA)
        self.exponent = a + ctx.e
        self.ring = ResidueRing(ctx, self.exponent)
        self.M = self.ring.modulus
        base = ctx.p ** self.L
        total = base ** (2 * self.m)
        if total > ctx.budget:
            raise BudgetExceeded(f"columns of degree {self.m} at level {self.L}, {ctx.label}", total, ctx.budget)
        idx = np.arange(total, dtype=np.int64)
        coords = []
        for _ in range(2 * self.m):
            idx, digit = np.divmod(idx, base)
            coords.append(digit)
        self.columns = [(coords[2 * r], coords[2 * r + 1]) for r in range(self.m)]
        ring = self.ring
        A_red = [[ctx.reduce(x, self.exponent) for x in row] for row in A.entries]
        self.images = []
        for r in range(self.m):
            total_r = None
            for s in range(self.m):
                if A_red[r][s] == (0, 0):
                    continue
                term = ring.mul(A_red[r][s], self.columns[s])
                total_r = term if total_r is None else ring.add(total_r, term)
            if total_r is None:
                zero = np.zeros_like(self.columns[0][0])
                total_r = (zero, zero)
            self.images.append(total_r)
        self.B_red = [[ctx.reduce(x, self.exponent) for x in row] for row in B.entries]
        self._phi = (-ctx.field.t % self.M, 2)

    def _pairing(self, i_index: int, candidates):
        """u_i^* A u_j for the fixed column i_index against candidate columns j."""
        ring = self.ring
        total = None
        for r in range(self.m):
            left = ring.conj((int(self.columns[r][0][i_index]), int(self.columns[r][1][i_index])))
            right = (self.images[r][0][candidates], self.images[r][1][candidates])
            term = ring.mul(left, right)
            total = term if total is None else ring.add(total, term)
        return total

    def _diagonal_candidates(self, j: int):
        value = self._norm_values()
        return np.nonzero(value == self.B_red[j][j][0] % self.M)[0]

    def _norm_values(self):
        if not hasattr(self, '_norms'):
            ring = self.ring
            total = None
            for r in range(self.m):
                term = ring.mul(ring.conj(self.columns[r]), self.images[r])
                total = term if total is None else ring.add(total, term)
            self._norms = total[0]
        return self._norms

    def _off_matches(self, value, target):
        a, b = self.ring.mul(value, self._phi)
        ta, tb = self.ring.mul(target, self._phi)
        return (a == ta) & (b == tb)

    def _invertible(self, chosen) -> bool:
        from quadratic_symbols.residue import ResidueRing
        ring = ResidueRing(self.ctx, 1)
        rows = [[(int(self.columns[r][0][c]) % self.ctx.p, int(self.columns[r][1][c]) % self.ctx.p) for c in chosen] for r in range(self.m)]
        det = _residue_det(ring, rows)
        return bool(ring.is_unit((np.array([det[0]]), np.array([det[1]])))[0])

    def solutions(self):
        """Every invertible U, as lists of column indices."""
        per_column = [self._diagonal_candidates(j) for j in range(self.m)]
        if any(len(c) == 0 for c in per_column):
            return
        for chosen in self._walk([], per_column):
            if self._invertible(chosen):
                yield chosen

    def find(self):
        return next(self.solutions(), None)

    def determinant(self, chosen, level: int):
        """det U mod p^level for the columns ``chosen``."""
        from quadratic_symbols.residue import ResidueRing
        ring = ResidueRing(self.ctx, level)
        M = ring.modulus
        rows = [[(int(self.columns[r][0][c]) % M, int(self.columns[r][1][c]) % M) for c in chosen] for r in range(self.m)]
        return _residue_det(ring, rows)

    def _walk(self, chosen, per_column):
        j = len(chosen)
        if j == self.m:
            yield list(chosen)
            return
        candidates = per_column[j]
        for i, index in enumerate(chosen):
            if len(candidates) == 0:
                return
            value = self._pairing(index, candidates)
            candidates = candidates[self._off_matches(value, self.B_red[i][j])]
        for index in candidates:
            yield from self._walk(chosen + [int(index)], per_column)


def _residue_det(ring, rows):
    m = len(rows)
    if m == 1:
        return rows[0][0]
    total = (0, 0)
    for perm in itertools.permutations(range(m)):
        sign = 1
        for x in range(m):
            for y in range(x + 1, m):
                if perm[x] > perm[y]:
                    sign = -sign
        term = (sign, 0)
        for r in range(m):
            term = ring.mul(term, rows[r][perm[r]])
        total = ring.add(total, term)
    return total


def equivalent(A: LocalHermitian, B: LocalHermitian) -> bool:
    """Whether A and B are GL_m(O_p)-equivalent."""
    ctx = A.ctx
    if A.m != B.m or ctx.label != B.ctx.label:
        return False
    if A.ord_det() != B.ord_det():
        return False
    if not ctx.is_ramified:
        return sorted(elementary_divisors(A)) == sorted(elementary_divisors(B))
    if ctx.p != 2:
        return class_invariants(A) == class_invariants(B)
    if det_class(A) != det_class(B) or sorted(elementary_divisors(A)) != sorted(elementary_divisors(B)):
        return False
    if A.m == 1:
        return True
    # A[U] = B mod p^{e'+1} \tilde Her with p^{e'} B^{-1} in \tilde Her forces A ~ B
    a = B.tilde_exponent() + 1
    found = _ColumnSearch(A, B, a).find()
    logger.debug(f"column search {A!r} ~ {B!r} at level {a}: {'found' if found else 'none'}")
    return found is not None


# -- enumeration -------------------------------------------------------------------

def _partitions(total: int, parts: int, smallest: int = 0):
    """Non-decreasing tuples of ``parts`` integers >= smallest summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total // parts + 1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _unramified_classes(ctx, m: int, d: int):
    for exps in _partitions(d, m):
        yield LocalHermitian.diagonal(ctx, [ctx.p ** a for a in exps])


def _odd_ramified_classes(ctx, m: int, d: int):
    """Jordan splittings: p^k (1, ..., 1, eps) on even varpi-scales 2k, p^c Theta_2 on 2c + 1."""
    diag_scales = list(range(1, d + 1))
    theta_scales = list(range(0, (d - 1) // 2 + 1)) if d >= 1 else []
    seen = set()

    def choose(types, remaining_dim, remaining_det):
        if not types:
            if remaining_dim == 0 and remaining_det == 0:
                yield ()
            return
        (kind, scale, size, weight), rest = types[0], types[1:]
        for count in range(remaining_dim // size + 1):
            if count * weight > remaining_det:
                break
            for tail in choose(rest, remaining_dim - count * size, remaining_det - count * weight):
                yield ((kind, scale, count),) + tail if count else tail

    types = [('diag', k, 1, k) for k in diag_scales] + [('theta', c, 2, 2 * c + 1) for c in theta_scales]
    for shape in choose(types, m, d):
        diag_groups = [(scale, count) for kind, scale, count in shape if kind == 'diag']
        thetas = [(scale, count) for kind, scale, count in shape if kind == 'theta']
        for classes in itertools.product(ctx.unit_classes(), repeat=len(diag_groups)):
            blocks = []
            for (scale, count), eps in zip(diag_groups, classes):
                values = [ctx.p ** scale] * (count - 1) + [ctx.p ** scale * eps]
                blocks.append(LocalHermitian.diagonal(ctx, values))
            for scale, count in thetas:
                blocks.extend(LocalHermitian.theta(ctx, 2, scale=scale) for _ in range(count))
            T = LocalHermitian.direct_sum(blocks)
            key = class_invariants(T)
            if key in seen:
                continue
            seen.add(key)
            yield T


def _dyadic_candidates(ctx, m: int, d: int):
    """Diagonal and paired 2x2 shapes at p = 2 ramified, before deduplication."""
    p, e = ctx.p, ctx.e
    if m == 1:
        if d >= e:
            for u in ctx.unit_classes():
                yield LocalHermitian.diagonal(ctx, [p ** d * u])
        return
    if m != 2:
        raise InvalidInput("classes at p=2 ramified are enumerated for degree <= 2")
    for k1 in range(e, d + 1):
        k2 = d - k1
        if k2 < k1:
            break
        for u1, u2 in itertools.product(ctx.unit_classes(), repeat=2):
            yield LocalHermitian.diagonal(ctx, [p ** k1 * u1, p ** k2 * u2])
    # [[x, varpi^d], [conj, y]] with 2 ord x, 2 ord y > d
    corner = ctx.prime_element ** d
    smallest = max(e, d // 2 + 1)
    values = [0] + [p ** i * u for i in range(smallest, d + e + 2) for u in (1, 3, 5, 7)]
    for x, y in itertools.combinations_with_replacement(values, 2):
        try:
            T = LocalHermitian(ctx, [[x, corner], [corner.conj(), y]])
        except InvalidInput:
            continue
        if T.is_nondegenerate():
            yield T


def enumerate_classes(ctx, m: int, d: int, d0=None):
    """
    Representatives of \\tilde Her_m(O_p) / GL_m(O_p) with ord_p det = d and,
    when ``d0`` is given, the norm class of the determinant's unit part
    equal to that of d0.
    """
    if m < 1 or d < 0:
        raise InvalidInput(f"need m >= 1 and d >= 0, got m={m}, d={d}")
    if not ctx.is_ramified:
        candidates = _unramified_classes(ctx, m, d)
    elif ctx.p != 2:
        candidates = _odd_ramified_classes(ctx, m, d)
    else:
        candidates = _dyadic_candidates(ctx, m, d)
    wanted = None if d0 is None else ctx.unit_class_of(Fraction(d0) / Fraction(ctx.p) ** ctx.ord(Fraction(d0)))
    reps = []
    for T in candidates:
        if not T.in_tilde_her() or T.ord_det() != d:
            continue
        order, cls = det_class(T)
        if wanted is not None and cls != wanted:
            continue
        if ctx.is_ramified and ctx.p == 2:
            if any(equivalent(T, R.matrix) for R in reps):
                continue
        reps.append(ClassRepresentative(T, order, cls, class_invariants(T)))
    logger.info(f"{len(reps)} classes of degree {m}, ord det {d} at {ctx.label}")
    return reps
