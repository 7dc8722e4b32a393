"""
Automorphisms of positive definite Hermitian matrices over O, by bounded
vector enumeration, and the local determinant index l_{p,T}.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction

import numpy as np

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput

from .matrices import GlobalHermitian, det

logger = logging.getLogger('hermitian_lattices')

# cap on candidate vectors per column
MAX_VECTORS = 20000


def _small_elements(field, bound: Fraction):
    """Every x = a + b w in O with N(x) <= bound."""
    # N(a + b w) = (a + t b / 2)^2 + D b^2 / 4
    found = []
    b_max = math.isqrt(int(4 * bound / field.D)) + 1
    for b in range(-b_max, b_max + 1):
        rest = bound - Fraction(field.D * b * b, 4)
        if rest < 0:
            continue
        centre = -Fraction(field.t * b, 2)
        radius = math.isqrt(int(rest)) + 1
        for a in range(math.floor(centre) - radius, math.ceil(centre) + radius + 1):
            x = field.element(a, b)
            if x.norm() <= bound:
                found.append(x)
    return found


def _hermitian_value(rows, x, y):
    """x^* rows y."""
    total = rows[0][0] - rows[0][0]
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        left = xi.conj()
        for j, yj in enumerate(y):
            if not yj.is_zero():
                total = total + left * rows[i][j] * yj
    return total


def vectors_of_value(T: GlobalHermitian, k) -> list:
    """Every x in O^m with x^* T x = k."""
    if not T.is_positive_definite():
        raise InvalidInput("vector enumeration needs a positive definite matrix")
    field = T.field
    smallest = float(np.linalg.eigvalsh(T.numeric())[0])
    # |x_i|^2 <= x^* x <= k / lambda_min, padded against rounding
    bound = Fraction(k) / Fraction(smallest).limit_denominator(10 ** 6) + 1
    coordinates = _small_elements(field, bound)
    total = len(coordinates) ** T.m
    if total > MAX_VECTORS ** 2:
        raise BudgetExceeded(f"vectors of value {k}", total, MAX_VECTORS ** 2)
    rows = T.entries()
    target = field.element(k)
    found = []
    for x in _tuples(coordinates, T.m):
        if _hermitian_value(rows, x, x) == target:
            found.append(x)
            if len(found) > MAX_VECTORS:
                raise BudgetExceeded(f"vectors of value {k}", len(found), MAX_VECTORS)
    logger.debug(f"{len(found)} vectors of value {k} for {T!r}")
    return found


def _tuples(coordinates, m: int):
    if m == 0:
        yield ()
        return
    for head in coordinates:
        for tail in _tuples(coordinates, m - 1):
            yield (head,) + tail


def _isometries(T1: GlobalHermitian, T2: GlobalHermitian):
    """Every g in M_m(O) with g^* T1 g = T2, as lists of columns."""
    if T1.m != T2.m or T1.field.D != T2.field.D:
        return
    rows1 = T1.entries()
    rows2 = T2.entries()
    per_column = [vectors_of_value(T1, T2.diag[j]) for j in range(T2.m)]

    def walk(chosen):
        j = len(chosen)
        if j == T2.m:
            yield list(chosen)
            return
        for v in per_column[j]:
            if all(_hermitian_value(rows1, chosen[i], v) == rows2[i][j] for i in range(j)):
                yield from walk(chosen + [v])

    yield from walk([])


def _column_det(columns):
    m = len(columns)
    return det([[columns[j][i] for j in range(m)] for i in range(m)])


def aut_counts(T: GlobalHermitian) -> tuple:
    """(e*(T), e(T)): automorphisms in SL_m(O) and in GL_m(O)."""
    if T.m > 2:
        raise InvalidInput("automorphisms are counted for degree <= 2")
    one = T.field.element(1)
    e = e_star = 0
    for g in _isometries(T, T):
        e += 1
        if _column_det(g) == one:
            e_star += 1
    logger.info(f"aut {T!r}: e* = {e_star}, e = {e}")
    return e_star, e


def sl_equivalent(T1: GlobalHermitian, T2: GlobalHermitian) -> bool:
    """Whether g^* T1 g = T2 for some g in SL_m(O)."""
    if T1.det() != T2.det():
        return False
    one = T1.field.element(1)
    return any(_column_det(g) == one for g in _isometries(T1, T2))


# -- l_{p,T} ------------------------------------------------------------------

def _norm_one_units(ctx, k: int):
    from quadratic_symbols.residue import ResidueRing

    ring = ResidueRing(ctx, k)
    a, b = ring.units()
    mask = ring.norm((a, b)) == 1 % ring.modulus
    return ring, {(int(x), int(y)) for x, y in zip(a[mask], b[mask])}


def _closure(ring, generators):
    group = {(1 % ring.modulus, 0)}
    frontier = list(group)
    while frontier:
        x = frontier.pop()
        for g in generators:
            a, b = ring.mul(x, g)
            y = (int(a), int(b))
            if y not in group:
                group.add(y)
                frontier.append(y)
    return group


def determinant_level(ctx) -> int:
    """The level at which determinants of automorphisms are read."""
    return 1 + ctx.e if ctx.p == 2 else 1


def l_pT(T) -> int:
    """
    [U_1 : det Aut(T)] at p, with U_1 the norm-one units, read modulo
    p^k through approximate automorphisms at level e' + k.
    """
    from .classes import _ColumnSearch

    ctx = T.ctx
    if T.m == 1:
        return 1
    if T.m > 2:
        raise InvalidInput("l_pT is computed for degree <= 2")
    k = determinant_level(ctx)
    ring, norm_one = _norm_one_units(ctx, k)
    a = T.tilde_exponent() + k
    search = _ColumnSearch(T, T, a)
    dets = set()
    for chosen in search.solutions():
        value = search.determinant(chosen, k)
        dets.add((int(value[0]) % ring.modulus, int(value[1]) % ring.modulus))
        if len(dets) == len(norm_one):
            break
    stray = dets - norm_one
    if stray:
        logger.warning(f"l_pT at {ctx.label}: {len(stray)} determinants off the norm-one group mod p^{k} dropped")
    image = _closure(ring, dets & norm_one)
    index = Fraction(len(norm_one), len(image))
    if index.denominator != 1:
        raise InvalidInput(f"determinant image of {T!r} is not a subgroup of size dividing {len(norm_one)}")
    logger.info(f"l_pT at {ctx.label} for {T!r}: {index} (level {a}, {len(dets)} determinants)")
    return int(index)
