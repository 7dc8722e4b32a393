"""
Partial local Siegel series

    b_p(T, s; N) = sum_{R in p^{-N} Her_m(O_p) / Her_m(O_p)} e_p(tr(T R)) u^{k(R)}

with u = p^{-s}.  Each R is written p^{-N} S with S running over
Her_m(O_p) mod p^N; k(R) is half the p-exponent of the index
[R O_p^m + O_p^m : O_p^m], read off the elementary divisors of S.
The character sum attached to each power of u is reduced in Z[zeta_{p^N}]
and must come out a rational integer.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction

import numpy as np

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput, NonRationalCharacterSum

from exact_algebra.laurent import LaurentPoly

logger = logging.getLogger('siegel_series')


def _vp(x, p: int, cap: int):
    v = np.zeros(np.shape(x), dtype=np.int64)
    for k in range(1, cap + 1):
        v += (x % p ** k == 0)
    return v


def _chunk_size() -> int:
    from django.conf import settings
    return settings.LATTICE_SETTINGS['CHUNK_SIZE']


# -- index of R O^m + O^m -------------------------------------------------------

def _denominator_exponent(ctx, rows) -> int:
    N = 0
    for row in rows:
        for x in row:
            for coord in (x.a, x.b):
                if coord != 0:
                    N = max(N, -ctx.ord(coord))
    return N


def _divisors(values, det_value, cap):
    """Capped elementary divisor exponents from entry valuations and the det valuation."""
    d1 = min(min(values), cap)
    if len(values) == 1:
        return [d1]
    return [d1, min(det_value - d1, cap)]


def mu_index(ctx, R) -> int:
    """[R O_p^m + O_p^m : O_p^m] for a Hermitian R over K with p-power denominators (m <= 2)."""
    from hermitian_lattices.matrices import as_matrix, det

    rows = as_matrix(ctx.field, R)
    m = len(rows)
    if m > 2:
        raise InvalidInput(f"the index is computed for degree <= 2, got {m}")
    N = _denominator_exponent(ctx, rows)
    if N == 0:
        return 1
    scale = ctx.field.element(ctx.p ** N)
    S = [[x * scale for x in row] for row in rows]
    entries = [x for row in S for x in row]
    det_S = det(S) if m == 2 else S[0][0]
    if ctx.is_split:
        exponent = 0
        for c in (0, 1):
            values = [ctx.valuation(x)[c] for x in entries]
            d = _divisors(values, ctx.valuation(det_S)[c], N)
            exponent += sum(N - x for x in d)
        return ctx.p ** exponent
    cap = 2 * N if ctx.is_ramified else N
    d = _divisors([ctx.valuation(x) for x in entries], ctx.valuation(det_S), cap)
    exponent = sum(cap - x for x in d)
    if ctx.is_inert:
        exponent *= 2
    return ctx.p ** exponent


# -- exact character sums ------------------------------------------------------

def cyclotomic_integer(counts, p: int, N: int) -> int:
    """
    sum_c counts[c] zeta^c for zeta a primitive p^N-th root of unity,
    reduced modulo the cyclotomic polynomial; raises unless the result is
    a rational integer.
    """
    if N == 0:
        return int(counts[0])
    M = p ** N
    step = p ** (N - 1)
    phi = M - step
    vec = [int(c) for c in counts]
    for e in range(M - 1, phi - 1, -1):
        c = vec[e]
        if c:
            for j in range(1, p):
                vec[e - j * step] -= c
            vec[e] = 0
    if any(vec[1:phi]):
        raise NonRationalCharacterSum(f"character sum mod {p}^{N} is not rational: {vec[:phi]}")
    return vec[0]


def _trace_coefficients(T, N: int):
    """tr(T^ S) mod p^N as a linear form in the coordinates of S, with T^ = p^{-e} T."""
    from quadratic_symbols.local import reduce_rational

    ctx = T.ctx
    p, M = ctx.p, ctx.p ** N
    K = ctx.field
    scale = K.element(Fraction(1, p ** ctx.e))
    omega_bar = K.omega.conj()
    try:
        diag = [reduce_rational(T.entries[i][i].a / p ** ctx.e, M, p) for i in range(T.m)]
        off = []
        for i in range(T.m):
            for j in range(i + 1, T.m):
                t = T.entries[i][j] * scale
                off.append((reduce_rational(t.trace(), M, p), reduce_rational((t * omega_bar).trace(), M, p)))
    except InvalidInput:
        raise InvalidInput(f"{T!r} is not semi-integral after removing p^{ctx.e}") from None
    return diag, off


class _CosetSpace:
    """Her_m(O_p) mod p^N as mixed-radix digits: diagonal first, then (a, b) per off-diagonal entry."""

    def __init__(self, ctx, m: int, N: int):
        self.ctx = ctx
        self.m = m
        self.N = N
        self.M = ctx.p ** N
        self.total = self.M ** (m * m)
        if ctx.is_ramified:
            pi = ctx.prime_element
            self._c0 = int(pi.a) % self.M
            self._c1_inv = pow(int(pi.b) % self.M, -1, self.M) if self.M > 1 else 0

    def digits(self, start: int, stop: int):
        ids = np.arange(start, stop, dtype=np.int64)
        return [(ids // self.M ** k) % self.M for k in range(self.m * self.m)]

    def character(self, digits, diag, off):
        M, m = self.M, self.m
        c = np.zeros_like(digits[0])
        for i in range(m):
            c = (c + diag[i] * digits[i]) % M
        for k, (c1, c2) in enumerate(off):
            c = (c + c1 * digits[m + 2 * k] + c2 * digits[m + 2 * k + 1]) % M
        return c

    def _entry_valuation(self, a, b, cap):
        ctx, p, N = self.ctx, self.ctx.p, self.N
        if ctx.is_inert:
            return np.minimum(_vp(a, p, N), _vp(b, p, N))
        b1 = (b * self._c1_inv) % self.M
        a1 = (a - b1 * self._c0) % self.M
        return np.minimum(np.minimum(2 * _vp(a1, p, N), 2 * _vp(b1, p, N) + 1), cap)

    def half_length(self, digits):
        """k(R) per coset: half the p-exponent of the index of R O^m + O^m."""
        ctx, p, N, M = self.ctx, self.ctx.p, self.N, self.M
        if self.m == 1:
            return N - _vp(digits[0], p, N)
        s11, s22, a, b = digits
        K = ctx.field
        det = s11 * s22 - (a * a + K.t * a * b + K.n * b * b)
        if ctx.is_ramified:
            cap = 2 * N
            d1 = np.minimum(np.minimum(2 * _vp(s11, p, N), 2 * _vp(s22, p, N)), self._entry_valuation(a, b, cap))
            dd = np.minimum(2 * _vp(det, p, 2 * N), cap + d1)
            length = (cap - d1) + (cap - np.minimum(dd - d1, cap))
            if np.any(length % 2):
                raise InvalidInput(f"odd index length at {ctx.label}, depth {N}")
            return length // 2
        if ctx.is_split:
            r = ctx.root % M
            x1 = (a + b * r) % M
            y1 = (a + b * ((K.t - r) % M)) % M
            d1 = np.minimum(np.minimum(_vp(s11, p, N), _vp(s22, p, N)), np.minimum(_vp(x1, p, N), _vp(y1, p, N)))
        else:
            d1 = np.minimum(np.minimum(_vp(s11, p, N), _vp(s22, p, N)), self._entry_valuation(a, b, N))
        dd = np.minimum(_vp(det, p, 2 * N), N + d1)
        return (N - d1) + (N - np.minimum(dd - d1, N))


def siegel_partial(T, N: int) -> LaurentPoly:
    """The partial Siegel series of T (stored in \\tilde Her) at depth N, as a polynomial in u."""
    ctx = T.ctx
    m = T.m
    if m > 2:
        raise InvalidInput(f"character sums are computed for degree <= 2, got {m}")
    if not T.is_nondegenerate():
        raise InvalidInput("T must be nondegenerate")
    if N < 0:
        raise InvalidInput(f"depth must be non-negative, got {N}")
    space = _CosetSpace(ctx, m, N)
    if space.total > ctx.budget:
        raise BudgetExceeded(f"Siegel cosets of degree {m} at depth {N}, {ctx.label}", space.total, ctx.budget)
    diag, off = _trace_coefficients(T, N)
    M = space.M
    width = (m * N + 1) * M
    histogram = np.zeros(width, dtype=np.int64)
    step = _chunk_size()
    for start in range(0, space.total, step):
        digits = space.digits(start, min(start + step, space.total))
        keys = space.half_length(digits) * M + space.character(digits, diag, off)
        histogram += np.bincount(keys, minlength=width)
        logger.debug(f"depth {N} at {ctx.label}: {min(start + step, space.total)}/{space.total} cosets")
    series = LaurentPoly()
    for k in range(m * N + 1):
        value = cyclotomic_integer(histogram[k * M:(k + 1) * M], ctx.p, N)
        if value:
            series = series + LaurentPoly.monomial(value, u=k)
    logger.info(f"partial Siegel series of {T!r} at depth {N}: {series}")
    return series


def ord_gamma(T) -> int:
    """ord_p gamma(T^) for the semi-integral T^ = p^{-e} T."""
    ctx = T.ctx
    value = ctx.f * (T.m // 2) + T.ord_det() - ctx.e * T.m
    if value == math.inf or value < 0:
        raise InvalidInput(f"{T!r} has no finite non-negative ord gamma")
    return int(value)
