"""
Reduced representatives of GL_m(O_p) \\ M_m(O_p)^x, their strata D_{m,i}
and the weights pi_p(W).

Reduced matrices are upper triangular with diagonal p^{e_i} (unramified),
varpi^{e_i} (ramified) or a pair of such integer matrices (split), and
entries above the diagonal running over the digit ranges fixed by the
diagonal entry of their column.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput

from .matrices import LocalHermitian, as_matrix, conj_transpose, det, inverse, mat_mul

logger = logging.getLogger('hermitian_lattices')


@dataclass(frozen=True)
class ReducedMatrix:
    """W over O_p; at split primes ``rows`` is None and (first, second) hold W_1, W_2."""
    nu: int
    exponents: tuple
    rows: tuple | None = None
    first: tuple | None = None
    second: tuple | None = None

    @property
    def m(self) -> int:
        return len(self.exponents) if self.rows is not None else len(self.first)


# -- elementary divisors of square matrices ------------------------------------

def _int_det(rows) -> Fraction:
    work = [[Fraction(x) for x in row] for row in rows]
    n = len(work)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            result = -result
        result *= work[col][col]
        for r in range(col + 1, n):
            factor = work[r][col] / work[col][col]
            if factor:
                work[r] = [work[r][k] - factor * work[col][k] for k in range(n)]
    return result


def integer_elementary_divisors(rows, p: int):
    """Exponents of the elementary divisors of an integer matrix over Z_p."""
    from quadratic_symbols.local import ord_p
    n = len(rows)
    previous = 0
    exponents = []
    for k in range(1, n + 1):
        best = math.inf
        for I in itertools.combinations(range(n), k):
            for J in itertools.combinations(range(n), k):
                minor = _int_det([[rows[i][j] for j in J] for i in I])
                if minor != 0:
                    best = min(best, ord_p(minor, p))
        if best == math.inf:
            raise InvalidInput("matrix is singular")
        exponents.append(best - previous)
        previous = best
    return tuple(exponents)


def field_elementary_divisors(ctx, rows):
    """Exponents of the elementary divisors of a matrix over O_p (p or varpi powers)."""
    n = len(rows)
    previous = 0
    exponents = []
    for k in range(1, n + 1):
        best = math.inf
        for I in itertools.combinations(range(n), k):
            for J in itertools.combinations(range(n), k):
                minor = det([[rows[i][j] for j in J] for i in I])
                if not minor.is_zero():
                    best = min(best, ctx.valuation(minor))
        if best == math.inf:
            raise InvalidInput("matrix is singular")
        exponents.append(best - previous)
        previous = best
    return tuple(exponents)


# -- strata and weights -------------------------------------------------------

def stratum(ctx, W):
    """
    The index i with W in D_{m,i}: an integer in the field cases, a pair
    (i_1, i_2) at split primes; None when W lies in no stratum.
    """
    if ctx.is_split:
        if isinstance(W, ReducedMatrix):
            first, second = W.first, W.second
        else:
            first, second = W
        e1 = integer_elementary_divisors(first, ctx.p)
        e2 = integer_elementary_divisors(second, ctx.p)
        if max(e1 + e2) > 1:
            return None
        return (sum(e1), sum(e2))
    rows = list(W.rows) if isinstance(W, ReducedMatrix) else as_matrix(ctx.field, W)
    exponents = field_elementary_divisors(ctx, rows)
    if max(exponents) > 1:
        return None
    return sum(exponents)


def pi_weight(ctx, i) -> int:
    """pi_p on D_{m,i}: (-1)^i q^{i(i-1)/2} with q the residue field size."""
    if i is None:
        return 0
    if ctx.is_split:
        i1, i2 = i
        return (-1) ** (i1 + i2) * ctx.p ** (i1 * (i1 - 1) // 2 + i2 * (i2 - 1) // 2)
    q = ctx.p ** 2 if ctx.is_inert else ctx.p
    return (-1) ** i * q ** (i * (i - 1) // 2)


def pi_p(ctx, W) -> int:
    return pi_weight(ctx, stratum(ctx, W))


def strata(ctx, m: int):
    """Every stratum index for degree m."""
    if ctx.is_split:
        return [(i1, i2) for i1 in range(m + 1) for i2 in range(m + 1)]
    return list(range(m + 1))


# -- enumeration --------------------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _integer_reduced(m: int, exponents, p: int):
    """Reduced upper triangular integer matrices with diagonal p^{e_i}."""
    positions = [(i, j) for i in range(m) for j in range(i + 1, m)]
    ranges = [range(p ** exponents[j]) for i, j in positions]
    for digits in itertools.product(*ranges):
        rows = [[0] * m for _ in range(m)]
        for i in range(m):
            rows[i][i] = p ** exponents[i]
        for (i, j), d in zip(positions, digits):
            rows[i][j] = d
        yield tuple(tuple(row) for row in rows)


def count_reduced(ctx, m: int, nu: int) -> int:
    """Number of reduced W with nu(det W) = nu."""
    return sum(1 for _ in reduced_matrices(ctx, m, nu, budget=None))


def reduced_matrices(ctx, m: int, nu: int, budget: int | None = -1):
    """Yield every reduced W of degree m with nu(det W) = nu."""
    budget = ctx.budget if budget == -1 else budget
    p = ctx.p
    K = ctx.field
    produced = 0

    def check():
        if budget is not None and produced > budget:
            raise BudgetExceeded(f"reduced matrices of degree {m}, nu={nu}", produced, budget)

    if ctx.is_split:
        for n1 in range(nu + 1):
            n2 = nu - n1
            for e1 in _compositions(n1, m):
                firsts = list(_integer_reduced(m, e1, p))
                for e2 in _compositions(n2, m):
                    for W1 in firsts:
                        for W2 in _integer_reduced(m, e2, p):
                            produced += 1
                            check()
                            yield ReducedMatrix(nu, (e1, e2), first=W1, second=W2)
        return

    if ctx.is_inert:
        if nu % 2:
            return
        for exps in _compositions(nu // 2, m):
            positions = [(i, j) for i in range(m) for j in range(i + 1, m)]
            ranges = [range(p ** exps[j]) for i, j in positions for _ in (0, 1)]
            for digits in itertools.product(*ranges):
                rows = [[K.element(0) for _ in range(m)] for _ in range(m)]
                for i in range(m):
                    rows[i][i] = K.element(p ** exps[i])
                for k, (i, j) in enumerate(positions):
                    rows[i][j] = K.element(digits[2 * k], digits[2 * k + 1])
                produced += 1
                check()
                yield ReducedMatrix(nu, exps, rows=tuple(tuple(r) for r in rows))
        return

    varpi = ctx.prime_element
    for exps in _compositions(nu, m):
        positions = [(i, j) for i in range(m) for j in range(i + 1, m)]
        ranges = []
        for i, j in positions:
            ranges.append(range(p ** ((exps[j] + 1) // 2)))
            ranges.append(range(p ** (exps[j] // 2)))
        for digits in itertools.product(*ranges):
            rows = [[K.element(0) for _ in range(m)] for _ in range(m)]
            for i in range(m):
                rows[i][i] = varpi ** exps[i]
            for k, (i, j) in enumerate(positions):
                rows[i][j] = digits[2 * k] + digits[2 * k + 1] * varpi
            produced += 1
            check()
            yield ReducedMatrix(nu, exps, rows=tuple(tuple(r) for r in rows))


def _split_first_component(ctx, T: LocalHermitian, W: ReducedMatrix):
    """First component of T[W^{-1}]: W_2^{-t} T_1 W_1^{-1}, or None if not integral."""
    modulus = ctx.p ** ctx.precision
    T1 = [[Fraction(x) for x in row] for row in T.component_matrix()]
    inv1 = _rational_inverse(W.first)
    inv2t = [list(col) for col in zip(*_rational_inverse(W.second))]
    product = _rat_mul(_rat_mul(inv2t, T1), inv1)
    out = []
    for row in product:
        out_row = []
        for x in row:
            if x.denominator % ctx.p == 0:
                return None
            out_row.append(x.numerator * pow(x.denominator, -1, modulus) % modulus)
        out.append(out_row)
    return out


def _rational_inverse(rows):
    n = len(rows)
    work = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [work[r][k] - factor * work[col][k] for k in range(2 * n)]
    return [row[n:] for row in work]


def _rat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def apply_inverse(T: LocalHermitian, W: ReducedMatrix):
    """T[W^{-1}] when it is integral at p, else None."""
    ctx = T.ctx
    if ctx.is_split:
        first = _split_first_component(ctx, T, W)
        return None if first is None else LocalHermitian.from_components(ctx, first)
    return T.try_inverse_transform([list(r) for r in W.rows])


def apply_forward(T: LocalHermitian, W: ReducedMatrix) -> LocalHermitian:
    """
    T[W*] = W T W* for a reduced W.  The reduced W represent GL_m(O_p)\\M_m, so
    their adjoints run over M_m/GL_m(O_p), the cosets T[.] is defined on.
    """
    ctx = T.ctx
    if ctx.is_split:
        T1 = T.component_matrix()
        W2t = [list(col) for col in zip(*W.second)]
        first = _rat_mul(_rat_mul(W.first, T1), W2t)
        return LocalHermitian.from_components(ctx, [[int(x) for x in row] for row in first])
    return T.transform(conj_transpose([list(r) for r in W.rows]))


def tilde_omega(T: LocalHermitian, nu_max: int):
    """Reduced W with nu(det W) <= nu_max and T[W^{-1}] in \\tilde Her_m(O_p)."""
    out = []
    for nu in range(nu_max + 1):
        for W in reduced_matrices(T.ctx, T.m, nu):
            image = apply_inverse(T, W)
            if image is not None and image.in_tilde_her():
                out.append((W, image))
    logger.debug(f"tilde Omega of {T!r} up to nu={nu_max}: {len(out)} matrices")
    return out


def global_rows(ctx, W: ReducedMatrix):
    """W as a matrix over K (split primes: rebuilt from its components)."""
    if W.rows is not None:
        return [list(r) for r in W.rows]
    modulus = ctx.p ** ctx.precision
    t, r = ctx.field.t, ctx.root
    inv = pow((2 * r - t) % modulus, -1, modulus)
    m = W.m
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            c1, c2 = W.first[i][j], W.second[i][j]
            b = (c1 - c2) * inv % modulus
            a = (c1 - b * r) % modulus
            row.append(ctx.field.element(a, b))
        rows.append(row)
    return rows


def nu_of(ctx, rows) -> int:
    """nu(det W) = ord_p N(det W)."""
    value = det(as_matrix(ctx.field, rows))
    return ctx.ord_norm(value)


__all__ = [
    'ReducedMatrix', 'reduced_matrices', 'count_reduced', 'stratum', 'strata', 'pi_p', 'pi_weight',
    'apply_inverse', 'apply_forward', 'tilde_omega', 'global_rows', 'nu_of',
    'integer_elementary_divisors', 'field_elementary_divisors', 'inverse', 'mat_mul',
]
