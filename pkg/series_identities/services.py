import logging

from hermitian_periods.exceptions import InvalidInput

from . import verification
from .serializers import VerificationReportSerializer, VerifyRequestSerializer

logger = logging.getLogger('series_identities')


class VerificationService:
    """Runs one family's checks at (D, p, m, d0) and serializes the reports"""

    @classmethod
    def parse(cls, data):
        """Validate a verification request; returns (family, ctx, options)"""
        from quadratic_symbols.local import splitting_type

        serializer = VerifyRequestSerializer(data=data)
        if not serializer.is_valid():
            raise InvalidInput(f"invalid verification request: {serializer.errors}")
        request = serializer.validated_data
        ctx = splitting_type(request['D'], request['p'])
        options = {
            'm': request['m'],
            'd0': request['d0'],
            'order': request.get('order'),
            'variant': 'literal' if request['literal'] else 'calibrated',
        }
        return request['family'], ctx, options, request['allow_calibration']

    @classmethod
    def compute(cls, family, ctx, m, d0=1, order=None, variant='calibrated'):
        """Every report the family produces, as VerificationReport objects"""
        logger.info(f"Verifying {family} at {ctx.label}, m={m}, d0={d0}, {variant}")
        if family == 'H':
            return [verification.verify_H(ctx, m, order, d0, variant)] \
                + verification.verify_H_symmetries(ctx, m, order, d0, variant)
        if family == 'H_parts':
            return verification.verify_H_parts(ctx, m, order)
        if family == 'assembly':
            return [verification.verify_assembly(ctx, m, order, d0, variant)]
        if family == 'lambda':
            top = verification.resolve_order(ctx, order)
            return [verification.verify_lambda(ctx, m, i, d0) for i in range(top + 1)]
        if family == 'P':
            return [verification.verify_P(ctx, m, order, d0, variant)]
        if family == 'zeta':
            return [verification.verify_zeta(ctx, m, order, d0, variant)]
        if family == 'Z_star':
            return [verification.zeta_Z_consistency(ctx, m, order, d0)]
        if family == 'K':
            return verification.K_chain(ctx, m, order, d0, variant)
        if family == 'koecher':
            return verification.koecher_chain(ctx, m, order, d0, variant)
        if family == 'Q':
            return [verification.verify_Q_round_trip(ctx, m, order, d0, variant)]
        if family == 'L':
            return [verification.verify_L(ctx, m, order, variant)]
        raise InvalidInput(f"unknown family {family!r}")

    @classmethod
    def accepted(cls, reports, allow_calibration=True) -> bool:
        """All reports pass, and calibrated deltas are present only when allowed"""
        if not all(r.passed for r in reports):
            return False
        if not allow_calibration and any(r.deltas for r in reports):
            logger.warning("Reports pass only with calibration deltas, which were not allowed")
            return False
        return True

    @classmethod
    def report(cls, reports):
        return [VerificationReportSerializer(r.to_dict()).data for r in reports]

    @classmethod
    def run(cls, data):
        """Parse, verify and serialize; returns (serialized reports, accepted)"""
        family, ctx, options, allow_calibration = cls.parse(data)
        reports = cls.compute(family, ctx, **options)
        failed = [r.family for r in reports if not r.passed]
        if failed:
            logger.warning(f"{family} at {ctx.label}: failing checks {', '.join(failed)}")
        return cls.report(reports), cls.accepted(reports, allow_calibration)
