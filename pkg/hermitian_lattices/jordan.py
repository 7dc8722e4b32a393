"""
Jordan splittings and normal forms of local Hermitian matrices.

Unramified and split matrices are classified by their elementary divisors
and are equivalent to diag(p^{a_1}, ..., p^{a_m}).  Ramified matrices are
split by pivoting into 1x1 blocks and 2x2 blocks; for odd p the 2x2 blocks
are hyperbolic planes p^c Theta_2 and the 1x1 blocks of one scale are
determined by their number and the norm class of their determinant.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from hermitian_periods.exceptions import InvalidInput
from quadratic_symbols.hilbert import hilbert_symbol

from .matrices import LocalHermitian, det, identity, mat_mul, conj_transpose

logger = logging.getLogger('hermitian_lattices')

DIAG, PAIR = 'diag', 'pair'


@dataclass
class JordanBlock:
    kind: str
    matrix: LocalHermitian
    # varpi-adic scale when ramified, p-adic exponent otherwise
    scale: int
    unit_class: int = 1

    @property
    def size(self) -> int:
        return self.matrix.m


@dataclass
class NormalForm:
    ctx: object
    unimodular_rank: int
    theta_rank: int
    tail: LocalHermitian | None
    blocks: list = field(default_factory=list)
    exponents: tuple = ()

    def reassemble(self) -> LocalHermitian:
        """1_r + p B_2 (unramified, split) or Theta_r + p^{i_p} B_2 (ramified)."""
        ctx = self.ctx
        parts = []
        if ctx.is_ramified:
            if self.theta_rank:
                parts.append(LocalHermitian.theta(ctx, self.theta_rank))
            if self.tail is not None:
                parts.append(self.tail.scaled(ctx.p ** ctx.i_p))
        else:
            if self.unimodular_rank:
                parts.append(LocalHermitian.identity(ctx, self.unimodular_rank))
            if self.tail is not None:
                parts.append(self.tail.scaled(ctx.p))
        return LocalHermitian.direct_sum(parts)

    def representative(self) -> LocalHermitian:
        return LocalHermitian.direct_sum([b.matrix for b in self.blocks])

    def to_dict(self) -> dict:
        return {
            'unimodular_rank': self.unimodular_rank,
            'theta_rank': self.theta_rank,
            'tail': self.tail.to_dict() if self.tail is not None else None,
            'blocks': [
                {'kind': b.kind, 'scale': b.scale, 'unit_class': b.unit_class, 'matrix': b.matrix.to_dict()}
                for b in self.blocks
            ],
        }


# -- elementary divisors ------------------------------------------------------

def _entry_valuation(ctx, x):
    v = ctx.valuation(x)
    return v[0] if ctx.is_split else v


def elementary_divisors(T: LocalHermitian):
    """
    Exponents of the elementary divisors of T over O_p: powers of p when
    unramified, of the first component when split, of varpi when ramified.
    """
    ctx = T.ctx
    rows = T.rows()
    m = T.m
    previous = 0
    exponents = []
    for k in range(1, m + 1):
        best = math.inf
        for I in itertools.combinations(range(m), k):
            for J in itertools.combinations(range(m), k):
                minor = det([[rows[i][j] for j in J] for i in I])
                if not minor.is_zero():
                    best = min(best, _entry_valuation(ctx, minor))
        if best == math.inf:
            raise InvalidInput("matrix is degenerate")
        exponents.append(best - previous)
        previous = best
    return tuple(exponents)


# -- ramified pivoting --------------------------------------------------------

def _apply(rows, X):
    return mat_mul(conj_transpose(X), mat_mul(rows, X))


def ramified_blocks(T: LocalHermitian):
    """Split T into 1x1 and 2x2 blocks; returns [(kind, rows)] with rows exact."""
    ctx = T.ctx
    K = ctx.field
    rows = T.rows()
    m = T.m
    active = list(range(m))
    blocks = []

    def vdiag(i):
        d = rows[i][i].a
        return math.inf if d == 0 else 2 * ctx.ord(d)

    while active:
        if len(active) == 1:
            i = active[0]
            if rows[i][i].a == 0:
                raise InvalidInput("matrix is degenerate")
            blocks.append((DIAG, [[rows[i][i]]]))
            break
        pairs = [(i, j) for i in active for j in active if i < j]
        mu_off = min((ctx.valuation(rows[i][j]) for i, j in pairs), default=math.inf)
        mu_diag = min(vdiag(i) for i in active)
        mu = min(mu_off, mu_diag)
        if mu == math.inf:
            raise InvalidInput("matrix is degenerate")
        pivot = next((i for i in active if vdiag(i) == mu), None)
        if pivot is None and ctx.p != 2 and mu % 2 == 0:
            i, j = next((i, j) for i, j in pairs if ctx.valuation(rows[i][j]) == mu)
            for lam in (K.element(1), K.omega, K.element(1, 1)):
                X = identity(K, m)
                X[j][i] = lam
                candidate = _apply(rows, X)
                if candidate[i][i].a != 0 and 2 * ctx.ord(candidate[i][i].a) == mu:
                    rows = candidate
                    pivot = i
                    break
        if pivot is not None:
            d = rows[pivot][pivot]
            X = identity(K, m)
            for j in active:
                if j != pivot:
                    X[pivot][j] = -(rows[pivot][j] / d)
            rows = _apply(rows, X)
            blocks.append((DIAG, [[rows[pivot][pivot]]]))
            active.remove(pivot)
            continue
        i, j = next((i, j) for i, j in pairs if ctx.valuation(rows[i][j]) == mu)
        a, c, b = rows[i][i], rows[i][j], rows[j][j]
        block_det = a * b - c * c.conj()
        X = identity(K, m)
        for k in active:
            if k in (i, j):
                continue
            # (lam, kap) = -B^{-1} (A_ik, A_jk)
            x, y = rows[i][k], rows[j][k]
            lam = -((b * x - c * y) / block_det)
            kap = -((a * y - c.conj() * x) / block_det)
            X[i][k] = lam
            X[j][k] = kap
        rows = _apply(rows, X)
        blocks.append((PAIR, [[rows[i][i], rows[i][j]], [rows[j][i], rows[j][j]]]))
        active.remove(i)
        active.remove(j)
    return blocks


def is_theta_block(ctx, block: LocalHermitian) -> bool:
    """Whether a 2x2 block is GL_2(O_p)-equivalent to Theta_2."""
    d = block.det()
    return ctx.ord(d) == ctx.i_p and hilbert_symbol(-d, -ctx.D, ctx.p) == 1


def _unit_part(ctx, value: Fraction) -> Fraction:
    return value / Fraction(ctx.p) ** ctx.ord(value)


# -- normal forms -------------------------------------------------------------

def normal_form(T: LocalHermitian, ctx=None) -> NormalForm:
    ctx = ctx or T.ctx
    if not T.is_nondegenerate():
        raise InvalidInput("normal form of a degenerate matrix")
    if not ctx.is_ramified:
        exponents = tuple(sorted(elementary_divisors(T)))
        r = sum(1 for a in exponents if a == 0)
        rest = [a for a in exponents if a > 0]
        tail = LocalHermitian.diagonal(ctx, [ctx.p ** (a - 1) for a in rest]) if rest else None
        blocks = [JordanBlock(DIAG, LocalHermitian.diagonal(ctx, [ctx.p ** a]), a) for a in exponents]
        return NormalForm(ctx, r, 0, tail, blocks, exponents)

    raw = ramified_blocks(T)
    diag_groups = {}
    theta_scales = []
    other_pairs = []
    for kind, rows in raw:
        if kind == DIAG:
            d = rows[0][0].a
            diag_groups.setdefault(ctx.ord(d), []).append(_unit_part(ctx, d))
            continue
        block = LocalHermitian(ctx, rows)
        mu = ctx.valuation(rows[0][1])
        c, parity = divmod(mu - ctx.i_p, 2)
        if parity == 0 and c >= 0 and is_theta_block(ctx, block.scaled(Fraction(1, ctx.p ** c))):
            theta_scales.append(c)
        else:
            other_pairs.append((mu, block))

    blocks = []
    for k in sorted(diag_groups):
        units = diag_groups[k]
        if ctx.p == 2:
            for u in units:
                cls = ctx.unit_class_of(u)
                blocks.append(JordanBlock(DIAG, LocalHermitian.diagonal(ctx, [ctx.p ** k * cls]), 2 * k, cls))
            continue
        product = Fraction(1)
        for u in units:
            product *= u
        cls = ctx.unit_class_of(product)
        values = [ctx.p ** k] * (len(units) - 1) + [ctx.p ** k * cls]
        for value in values:
            blocks.append(JordanBlock(DIAG, LocalHermitian.diagonal(ctx, [value]), 2 * k, ctx.unit_class_of(_unit_part(ctx, Fraction(value)))))
    for c in sorted(theta_scales):
        blocks.append(JordanBlock(PAIR, LocalHermitian.theta(ctx, 2, scale=c), 2 * c + ctx.i_p))
    for mu, block in sorted(other_pairs, key=lambda item: item[0]):
        blocks.append(JordanBlock(PAIR, block, mu))
    blocks.sort(key=lambda b: (b.scale, b.kind))

    theta_rank = 2 * sum(1 for c in theta_scales if c == 0)
    rest = [b.matrix for b in blocks if not (b.kind == PAIR and b.scale == ctx.i_p and b.matrix == LocalHermitian.theta(ctx, 2))]
    tail = None
    if rest:
        remainder = LocalHermitian.direct_sum(rest)
        try:
            tail = remainder.scaled(Fraction(1, ctx.p ** ctx.i_p))
        except InvalidInput:
            logger.warning(f"Normal form tail at {ctx.label} is not divisible by p^{ctx.i_p}")
            tail = None
    exponents = elementary_divisors(T)
    return NormalForm(ctx, theta_rank, theta_rank, tail, blocks, tuple(sorted(exponents)))


def class_invariants(T: LocalHermitian):
    """
    Complete GL_m(O_p)-invariants where they are known: elementary divisors
    for unramified and split primes; Jordan type plus determinant classes of
    the even-scale components for odd ramified primes.  None at p = 2
    ramified.
    """
    ctx = T.ctx
    if not ctx.is_ramified:
        return ('ed',) + tuple(sorted(elementary_divisors(T)))
    if ctx.p == 2:
        return None
    form = normal_form(T)
    summary = {}
    for block in form.blocks:
        key = (block.kind, block.scale)
        count, cls = summary.get(key, (0, 1))
        summary[key] = (count + 1, cls * (1 if block.unit_class == 1 else -1))
    return ('jordan',) + tuple(sorted((kind, scale, count, cls) for (kind, scale), (count, cls) in summary.items()))


def det_class(T: LocalHermitian):
    """(ord_p det, norm class of its unit part)."""
    ctx = T.ctx
    d = T.det()
    return ctx.ord(d), ctx.unit_class_of(_unit_part(ctx, d))
