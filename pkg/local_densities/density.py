"""
Local densities alpha_p(S, T), primitive densities beta_p(S, T), the
Her-lattice density upsilon_p(T) and stratum densities alpha_p(S, T; i).

Each density is the normalized count p^{a l^2} #A / p^{2 m l L} at a level a,
accepted once two consecutive levels agree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput, StabilizationError

from . import counting
from .counting import ALPHA, BETA, UPSILON

logger = logging.getLogger('local_densities')

# extra level pairs tried after a disagreement
MAX_ADVANCE = 3


@dataclass
class DensityValue:
    kind: str
    value: Fraction
    level_used: int
    raw_counts: tuple = ()
    counting_levels: tuple = ()
    lifted: bool = False
    method: str = 'count'
    stratum: object = None
    label: str = ''

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'value': str(self.value),
            'level_used': self.level_used,
            'raw_counts': [str(c) for c in self.raw_counts],
            'counting_levels': list(self.counting_levels),
            'lifted': self.lifted,
            'method': self.method,
            'stratum': self.stratum,
            'context': self.label,
        }


def normalize(ctx, count: int, m: int, l: int, a: int, L: int) -> Fraction:
    return Fraction(count * ctx.p ** (a * l * l), ctx.p ** (2 * m * l * L))


def start_level(T) -> int:
    """The least level from which the counts of T are stable."""
    return max(1, T.tilde_exponent() + 1)


def level_value(S, T, a: int, kind: str = ALPHA):
    """(normalized value, raw count, counting level) at level a."""
    L = counting.counting_level(S, a, kind)
    raw = counting.count(S, T, a, kind)
    return normalize(S.ctx, raw, S.m, T.m, a, L), raw, L


def _check_pair(S, T):
    if S.ctx.label != T.ctx.label:
        raise InvalidInput(f"S and T live at different primes: {S.ctx.label} / {T.ctx.label}")
    if not T.is_nondegenerate():
        raise InvalidInput("T must be nondegenerate")
    if T.m > S.m:
        logger.debug(f"deg T = {T.m} exceeds deg S = {S.m}: density is zero")


def _stabilize(S, T, kind: str, start: int | None = None) -> DensityValue:
    _check_pair(S, T)
    ctx = S.ctx
    a = start_level(T) if start is None else start
    first, raw1, L1 = level_value(S, T, a, kind)
    earlier = None
    for step in range(MAX_ADVANCE + 1):
        try:
            second, raw2, L2 = level_value(S, T, a + 1, kind)
        except BudgetExceeded:
            if step:
                logger.error(f"{kind} at {ctx.label} ran out of budget at level {a + 1}; last estimates {earlier}, {first}")
            raise
        if first == second:
            value = DensityValue(
                kind, first, a, (raw1, raw2), (L1, L2),
                lifted=not S.in_tilde_her() and kind != UPSILON, label=ctx.label,
            )
            logger.debug(f"{kind}({S}, {T}) at {ctx.label} = {first} (level {a})")
            return value
        logger.info(f"{kind} at {ctx.label}: level {a} gives {first}, level {a + 1} gives {second}; advancing")
        earlier = first
        a, first, raw1, L1 = a + 1, second, raw2, L2
    raise StabilizationError(kind, a - 1, earlier, first)


def alpha(S, T=None, start: int | None = None) -> DensityValue:
    """alpha_p(S, T) by counting; alpha_p(S) when T is omitted."""
    return _stabilize(S, S if T is None else T, ALPHA, start)


def beta(S, T, start: int | None = None) -> DensityValue:
    """Primitive density beta_p(S, T); T of degree at most 2."""
    return _stabilize(S, T, BETA, start)


def upsilon(T, start: int | None = None) -> DensityValue:
    """upsilon_p(T): the density of T against itself modulo p^a Her."""
    return _stabilize(T, T, UPSILON, start)


def alpha_partial(S, T, i, halved: bool = False, start: int | None = None) -> DensityValue:
    """
    alpha_p(S, T; i) for S, T of the same degree at most 2: the part of
    alpha_p(S, T) carried by X in the stratum D_{m,i}.  ``halved`` applies
    the factor 1/2 of the normalization with a leading 2^{-1}.
    """
    _check_pair(S, T)
    ctx = S.ctx
    m = S.m
    a = start_level(T) if start is None else start
    values = []
    raws, levels = [], []
    for level in (a, a + 1):
        raw, L = counting.count_partial(S, T, level, i)
        raws.append(raw)
        levels.append(L)
        values.append(normalize(ctx, raw, m, m, level, L))
    if values[0] != values[1]:
        raise StabilizationError(f"alpha partial {i}", a, values[0], values[1])
    value = values[0] / 2 if halved else values[0]
    return DensityValue(ALPHA, value, a, tuple(raws), tuple(levels), method='count', stratum=i, label=ctx.label)


# -- fast alpha_p(T) ------------------------------------------------------------

def unimodular_factor(ctx, n: int) -> Fraction:
    """alpha_p(1_n) (unramified, split) or alpha_p(Theta_n) (ramified)."""
    p = Fraction(ctx.p)
    value = Fraction(1)
    if ctx.is_inert:
        for i in range(1, n + 1):
            value *= 1 - (-p) ** -i
    elif ctx.is_split:
        for i in range(1, n + 1):
            value *= 1 - p ** -i
    else:
        for i in range(1, n // 2 + 1):
            value *= 1 - p ** (-2 * i)
    return value


def _unramified_alpha(ctx, exponents) -> Fraction:
    by_scale = {}
    for a in exponents:
        by_scale[a] = by_scale.get(a, 0) + 1
    value = Fraction(1)
    for n in by_scale.values():
        value *= unimodular_factor(ctx, n)
    power = 0
    for j in range(1, max(exponents) + 1):
        power += sum(n for scale, n in by_scale.items() if scale >= j) ** 2
    return value * ctx.p ** power


@lru_cache(maxsize=256)
def _ramified_alpha(T) -> Fraction:
    from hermitian_lattices.jordan import PAIR, normal_form
    from hermitian_lattices.matrices import LocalHermitian

    from .closed_forms import in_her_star

    ctx = T.ctx
    p = ctx.p
    if T.in_her(1):
        return p ** (T.m * T.m) * _ramified_alpha(T.scaled(Fraction(1, p)))
    form = normal_form(T)
    unit_theta = LocalHermitian.theta(ctx, 2)
    thetas = [b for b in form.blocks if b.kind == PAIR and b.matrix == unit_theta]
    rest = [b.matrix for b in form.blocks if not (b.kind == PAIR and b.matrix == unit_theta)]
    if thetas and rest:
        remainder = LocalHermitian.direct_sum(rest)
        if remainder.in_her(ctx.i_p) and in_her_star(remainder.scaled(Fraction(1, p ** ctx.i_p))):
            return unimodular_factor(ctx, 2 * len(thetas)) * _ramified_alpha(remainder)
    elif thetas:
        return unimodular_factor(ctx, 2 * len(thetas))
    return alpha(form.representative()).value


def alpha_fast(T) -> DensityValue:
    """alpha_p(T) from the Jordan splitting, counting only blocks with no closed form."""
    from hermitian_lattices.jordan import elementary_divisors

    ctx = T.ctx
    if not T.is_nondegenerate():
        raise InvalidInput("T must be nondegenerate")
    if ctx.is_ramified:
        value = _ramified_alpha(T)
    else:
        value = _unramified_alpha(ctx, elementary_divisors(T))
    return DensityValue(ALPHA, value, 0, method='closed', label=ctx.label)
