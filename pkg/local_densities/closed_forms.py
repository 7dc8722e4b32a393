"""Closed forms of densities against unimodular matrices."""

from __future__ import annotations

from fractions import Fraction

from hermitian_periods.exceptions import InvalidInput


def in_her_star(B) -> bool:
    """
    Membership in Her_{m,*}(O_p): even diagonal when p = 2 ramified, plus an
    off-diagonal divisible by varpi when f_2 = 2; all of Her_m(O_p) otherwise.
    """
    ctx = B.ctx
    if not B.in_her():
        return False
    if not (ctx.is_ramified and ctx.p == 2):
        return True
    for i in range(B.m):
        if ctx.ord(B.entries[i][i].a) < 1:
            return False
    if ctx.f == 2:
        for i in range(B.m):
            for j in range(i + 1, B.m):
                x = B.entries[i][j]
                if not x.is_zero() and ctx.valuation(x) < 1:
                    return False
    return True


def _require_even(value: int, what: str):
    if value % 2:
        raise InvalidInput(f"{what} must be even, got {value}")


def beta_unimodular_scaled(ctx, k: int, m: int) -> Fraction:
    """
    beta_p(1_{2k}, pB) (unramified, split) or beta_p(Theta_{2k}, p^{i_p} B)
    (ramified, B in Her_*) for any B of degree m.
    """
    p = Fraction(ctx.p)
    value = Fraction(1)
    if ctx.is_ramified:
        for i in range(m):
            value *= 1 - p ** (-2 * k + 2 * i)
        return value
    sign = -1 if ctx.is_inert else 1
    for i in range(2 * m):
        value *= 1 - sign ** i * p ** (-2 * k + i)
    return value


def alpha_unimodular_pair(ctx, k: int, m: int) -> Fraction:
    """alpha_p(1_{2k}, 1_m), or alpha_p(Theta_{2k}, Theta_m) for even m at ramified p."""
    p = Fraction(ctx.p)
    value = Fraction(1)
    if ctx.is_ramified:
        _require_even(m, "degree of Theta_m")
        for i in range(m // 2):
            value *= 1 - p ** (-2 * k + 2 * i)
        return value
    sign = -1 if ctx.is_inert else 1
    for i in range(m):
        value *= 1 - sign ** i * p ** (-2 * k + i)
    return value


def peel_factor(ctx, n0: int) -> Fraction:
    """alpha_p(1_{n0} + pB_1) / alpha_p(pB_1), or the Theta_{n0} analogue at ramified p."""
    from .density import unimodular_factor
    if ctx.is_ramified:
        _require_even(n0, "degree of Theta_n0")
    return unimodular_factor(ctx, n0)


def beta_mixed(ctx, k: int, m: int, r: int) -> Fraction:
    """
    beta_p(1_{2k}, 1_{m-r} + pB_1), or beta_p(Theta_{2k}, Theta_{m-r} + p^{i_p} B_1)
    at ramified p with m - r even and B_1 in Her_*.
    """
    p = Fraction(ctx.p)
    value = Fraction(1)
    if ctx.is_ramified:
        _require_even(m - r, "m - r")
        for i in range((m + r - 2) // 2 + 1):
            value *= 1 - p ** (-2 * k + 2 * i)
        return value
    sign = -1 if ctx.is_inert else 1
    for i in range(m + r):
        value *= 1 - sign ** i * p ** (-2 * k + i)
    return value


def beta_theta_factor(ctx, k: int, m: int) -> Fraction:
    """The factor linking beta_p(Theta_{2k}, T) and G_p(T, p^{-2k}) for deg T = m."""
    p = Fraction(ctx.p)
    xi = ctx.xi
    value = Fraction(1)
    for i in range((m - 1) // 2 + 1):
        value *= 1 - p ** (2 * i - 2 * k)
    for i in range(1, m // 2 + 1):
        value *= 1 - xi * p ** (2 * i - 1 - 2 * k)
    return value


def unimodular_split(T):
    """
    (r, B_1) with T = 1_{m-r} + pB_1 (unramified, split) or
    Theta_{m-r} + p^{i_p} B_1 (ramified, B_1 in Her_*), read off the normal
    form; r = m - rank of the unimodular part.  B_1 is None when r = 0.
    """
    from hermitian_lattices.jordan import normal_form

    ctx = T.ctx
    form = normal_form(T)
    if ctx.is_ramified:
        n0 = form.theta_rank
        tail = form.tail
        if tail is not None and not in_her_star(tail):
            raise InvalidInput(f"{T!r} is not Theta_r + p^{ctx.i_p} B with B in Her_*")
        return T.m - n0, tail
    return T.m - form.unimodular_rank, form.tail
