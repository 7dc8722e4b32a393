import logging

from hermitian_periods.exceptions import InvalidInput

from . import checks, density
from .serializers import CheckReportSerializer, DensityRequestSerializer, DensityValueSerializer

logger = logging.getLogger('local_densities')


class DensityService:
    """Counted and closed-form local densities, plus the consistency checks"""

    @classmethod
    def parse(cls, data):
        """Validate a density request; returns (kind, S, T, options)"""
        from hermitian_lattices.matrices import LocalHermitian
        from quadratic_symbols.local import splitting_type

        serializer = DensityRequestSerializer(data=data)
        if not serializer.is_valid():
            raise InvalidInput(f"invalid density request: {serializer.errors}")
        request = serializer.validated_data
        ctx = splitting_type(request['S']['D'], request['S']['p'])
        S = LocalHermitian.from_dict(ctx, request['S'])
        T = LocalHermitian.from_dict(ctx, request['T']) if 'T' in request else None
        stratum = request.get('stratum')
        if stratum is not None:
            stratum = tuple(stratum) if ctx.is_split else stratum[0]
        options = {'start': request.get('start'), 'stratum': stratum, 'halved': request['halved']}
        return request['kind'], S, T, options

    @classmethod
    def compute(cls, kind, S, T=None, start=None, stratum=None, halved=False):
        logger.info(f"Computing {kind} at {S.ctx.label} for S of degree {S.m}")
        if kind == 'alpha':
            return density.alpha(S, T, start=start)
        if kind == 'beta':
            return density.beta(S, T, start=start)
        if kind == 'upsilon':
            return density.upsilon(S if T is None else T, start=start)
        if kind == 'alpha_partial':
            return density.alpha_partial(S, S if T is None else T, stratum, halved=halved, start=start)
        if kind == 'alpha_fast':
            return density.alpha_fast(S if T is None else T)
        raise InvalidInput(f"unknown density kind {kind!r}")

    @classmethod
    def report(cls, value):
        return DensityValueSerializer(value.to_dict()).data

    @classmethod
    def run(cls, data):
        """Parse, compute and serialize one request"""
        kind, S, T, options = cls.parse(data)
        return cls.report(cls.compute(kind, S, T, **options))

    @classmethod
    def checks(cls, S, T=None):
        """Every applicable consistency check for S (and T) as serialized reports"""
        reports = [checks.upsilon_relation_check(S), checks.alpha_scaling_check(S, 1)]
        if T is not None:
            reports.extend(checks.beta_from_alpha_inversion(S, T))
            if S.m == T.m:
                reports.append(checks.omega_quotient_check(S, T))
                reports.append(checks.tilde_omega_quotient_check(S, T))
        failed = [r.name for r in reports if not r.passed]
        if failed:
            logger.warning(f"Density checks failed at {S.ctx.label}: {', '.join(failed)}")
        return [CheckReportSerializer(r.to_dict()).data for r in reports]
