"""
Consistency checks between independently counted densities: scaling,
the alpha / upsilon relation, the reduced-matrix expansions linking alpha and
beta, and the class-count quotients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from hermitian_periods.exceptions import InvalidInput

from . import density

logger = logging.getLogger('local_densities')


@dataclass
class CheckReport:
    name: str
    passed: bool
    lhs: Fraction
    rhs: Fraction
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'check': self.name,
            'passed': self.passed,
            'lhs': str(self.lhs),
            'rhs': str(self.rhs),
            'details': {k: str(v) if isinstance(v, Fraction) else v for k, v in self.details.items()},
        }


def _report(name, lhs, rhs, **details) -> CheckReport:
    report = CheckReport(name, lhs == rhs, lhs, rhs, details)
    if report.passed:
        logger.info(f"{name}: {lhs} == {rhs}")
    else:
        logger.warning(f"{name} failed: {lhs} != {rhs} ({details})")
    return report


def alpha_scaling_check(B, r: int, d_unit=1) -> CheckReport:
    """alpha_p(p^r d B) against p^{r m^2} alpha_p(B)."""
    ctx = B.ctx
    if ctx.ord(Fraction(d_unit)) != 0:
        raise InvalidInput(f"{d_unit} is not a unit at p={ctx.p}")
    scaled = B.scaled(Fraction(d_unit) * ctx.p ** r)
    lhs = density.alpha(scaled).value
    base = density.alpha(B).value
    return _report('alpha scaling', lhs, ctx.p ** (r * B.m * B.m) * base, r=r, d=d_unit, base=base)


def upsilon_factor(ctx, m: int) -> Fraction:
    """alpha_p(A) / upsilon_p(A) for A of degree m."""
    if not ctx.is_ramified:
        return Fraction(1)
    return Fraction(ctx.p) ** (-m * (m + 1) * ctx.f // 2 + m * m * ctx.delta)


def upsilon_relation_check(A) -> CheckReport:
    ctx = A.ctx
    a = density.alpha(A).value
    u = density.upsilon(A).value
    factor = upsilon_factor(ctx, A.m)
    return _report('alpha / upsilon', a, factor * u, upsilon=u, factor=factor)


def _images(T, nu_max: int):
    """(W, nu, T[W^{-1}]) over reduced W with T[W^{-1}] integral."""
    from hermitian_lattices.reduced import apply_inverse, reduced_matrices

    for nu in range(nu_max + 1):
        for W in reduced_matrices(T.ctx, T.m, nu):
            image = apply_inverse(T, W)
            if image is not None:
                yield W, nu, image


def _representable(S, image) -> bool:
    return image.in_tilde_her() or not S.in_tilde_her()


def beta_from_alpha_inversion(S, T) -> tuple:
    """
    Both directions of the reduced-matrix expansion:
      alpha(S, T) = sum_W p^{(n-m) nu(det W)} beta(S, T[W^{-1}])
      beta(S, T)  = sum_W p^{(n-m) nu(det W)} pi(W) alpha(S, T[W^{-1}])
    with n = deg T and m = deg S.  Returns the two reports.
    """
    from hermitian_lattices.reduced import pi_p

    ctx = S.ctx
    p = Fraction(ctx.p)
    n, m = T.m, S.m
    nu_max = T.ord_det()
    direct = Fraction(0)
    inverted = Fraction(0)
    terms = 0
    for W, nu, image in _images(T, nu_max):
        if not _representable(S, image):
            continue
        terms += 1
        weight = p ** ((n - m) * nu)
        direct += weight * density.beta(S, image).value
        pi = pi_p(ctx, W)
        if pi:
            inverted += weight * pi * density.alpha(S, image).value
    alpha_value = density.alpha(S, T).value
    beta_value = density.beta(S, T).value
    return (
        _report('alpha from beta', alpha_value, direct, terms=terms),
        _report('beta from alpha', beta_value, inverted, terms=terms),
    )


def _classes_modulo(S, T, transposed: bool, stratum=None):
    """
    Number of reduced W with S[W*] ~ T (transposed) or S ~ T[W^{-1}],
    optionally restricted to a stratum.
    """
    from hermitian_lattices.classes import equivalent
    from hermitian_lattices.matrices import conj_transpose
    from hermitian_lattices.reduced import apply_inverse, global_rows, reduced_matrices
    from hermitian_lattices.reduced import stratum as stratum_of

    ctx = S.ctx
    nu = T.ord_det() - S.ord_det()
    if nu < 0:
        return 0
    found = 0
    for W in reduced_matrices(ctx, S.m, nu):
        if stratum is not None and stratum_of(ctx, W) != stratum:
            continue
        if transposed:
            image = S.transform(conj_transpose(global_rows(ctx, W)))
            if equivalent(image, T):
                found += 1
        else:
            image = apply_inverse(T, W)
            if image is not None and equivalent(S, image):
                found += 1
    return found


def omega_quotient_check(S, T, stratum=None) -> CheckReport:
    """alpha(S, T) / alpha(T) against #(Omega(S, T) / GL) p^{-m(ord det T - ord det S)}."""
    ctx = S.ctx
    if S.m != T.m:
        raise InvalidInput("class-count quotients need S and T of the same degree")
    if stratum is None:
        numerator = density.alpha(S, T).value
    else:
        numerator = density.alpha_partial(S, T, stratum).value
    lhs = numerator / density.alpha(T).value
    count = _classes_modulo(S, T, transposed=True, stratum=stratum)
    rhs = Fraction(count) * Fraction(ctx.p) ** (-S.m * (T.ord_det() - S.ord_det()))
    return _report('Omega quotient', lhs, rhs, classes=count, stratum=stratum)


def tilde_omega_quotient_check(S, T, stratum=None) -> CheckReport:
    """alpha(S, T) / alpha(S) against #(GL \\ tilde Omega(S, T))."""
    if S.m != T.m:
        raise InvalidInput("class-count quotients need S and T of the same degree")
    if stratum is None:
        numerator = density.alpha(S, T).value
    else:
        numerator = density.alpha_partial(S, T, stratum).value
    lhs = numerator / density.alpha(S).value
    count = _classes_modulo(S, T, transposed=False, stratum=stratum)
    return _report('tilde Omega quotient', lhs, Fraction(count), classes=count, stratum=stratum)


def partial_normalization_verdict(S, T) -> dict:
    """
    Compare the stratum densities, with and without the leading factor 1/2,
    against the Omega class counts; reports which normalization the counts
    support.
    """
    from hermitian_lattices.reduced import strata

    ctx = S.ctx
    alpha_T = density.alpha(T).value
    scale = Fraction(ctx.p) ** (-S.m * (T.ord_det() - S.ord_det()))
    rows = []
    unhalved_ok = halved_ok = True
    for i in strata(ctx, S.m):
        try:
            value = density.alpha_partial(S, T, i).value
        except InvalidInput:
            continue
        expected = _classes_modulo(S, T, transposed=True, stratum=i) * scale * alpha_T
        unhalved_ok &= value == expected
        halved_ok &= value / 2 == expected
        rows.append({'stratum': i, 'unhalved': str(value), 'expected': str(expected)})
    verdict = 'unhalved' if unhalved_ok else 'halved' if halved_ok else 'neither'
    logger.info(f"stratum normalization at {ctx.label}: {verdict}")
    return {'verdict': verdict, 'strata': rows}
