"""
Series families and verification reports.

A family body is a TruncatedSeries in t; ``variant`` records whether it was
built from the stated display ('literal') or from the form that matches the
class-sum oracle ('calibrated').  Every calibrated body carries the list of
exponent changes it makes relative to the stated display.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from hermitian_periods.exceptions import InvalidInput, VerificationFailure

logger = logging.getLogger('series_identities')

FAMILIES = ('L_mp', 'P', 'tildeP', 'Q', 'R', 'K', 'Z_star', 'zeta', 'H', 'H0', 'H1', 'S', 'lambda')
VARIANTS = ('literal', 'calibrated')


def check_variant(variant: str):
    if variant not in VARIANTS:
        raise InvalidInput(f"unknown variant {variant!r}; expected one of {VARIANTS}")


@dataclass(frozen=True)
class Delta:
    """One change from the stated display: where, what was stated, what is used."""
    where: str
    literal: str
    calibrated: str

    def to_dict(self) -> dict:
        return {'where': self.where, 'literal': self.literal, 'calibrated': self.calibrated}


@dataclass
class SeriesFamily:
    name: str
    m: int
    ctx: object
    body: object
    d0: int = 1
    variant: str = 'calibrated'
    deltas: list = field(default_factory=list)

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise InvalidInput(f"unknown series family {self.name!r}")
        check_variant(self.variant)

    @property
    def order(self) -> int:
        return self.body.order

    def to_dict(self) -> dict:
        return {
            'family': self.name,
            'm': self.m,
            'context': self.ctx.label,
            'd0': self.d0,
            'variant': self.variant,
            'order': self.order,
            'body': str(self.body),
            'deltas': [d.to_dict() for d in self.deltas],
        }


@dataclass
class VerificationReport:
    family: str
    label: str
    m: int
    order: int
    variant: str = 'calibrated'
    d0: int = 1
    first_mismatch: int | None = None
    monomials: list = field(default_factory=list)
    deltas: list = field(default_factory=list)
    against: str = 'bruteforce'

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def raise_for_failure(self):
        if not self.passed:
            raise VerificationFailure(self)

    def to_dict(self) -> dict:
        return {
            'family': self.family,
            'context': self.label,
            'm': self.m,
            'd0': self.d0,
            'order': self.order,
            'variant': self.variant,
            'against': self.against,
            'passed': self.passed,
            'first_mismatch': self.first_mismatch,
            'monomials': [{'monomial': mono, 'difference': coeff} for mono, coeff in self.monomials],
            'deltas': [d.to_dict() for d in self.deltas],
        }


def compare(family: str, ctx, m: int, expected, actual, variant='calibrated', d0=1, deltas=(),
            against='bruteforce') -> VerificationReport:
    """Monomial-level comparison of two truncated series in t."""
    diff = expected.diff(actual)
    order = min(expected.order, actual.order)
    report = VerificationReport(
        family=family, label=ctx.label, m=m, order=order, variant=variant, d0=d0,
        first_mismatch=diff.first_mismatch, monomials=diff.monomials, deltas=list(deltas),
        against=against,
    )
    if report.passed:
        logger.info(f"{family} (m={m}, {ctx.label}, {variant}) agrees with {against} through t^{order}")
    else:
        logger.warning(
            f"{family} (m={m}, {ctx.label}, {variant}) differs from {against} "
            f"at t^{report.first_mismatch}: {report.monomials[:4]}"
        )
    return report
