import logging

from hermitian_periods.exceptions import InvalidInput

from . import polynomials
from .serializers import SiegelReportSerializer, SiegelRequestSerializer

logger = logging.getLogger('siegel_series')


class SiegelService:
    """F, \\tilde F, G, \\tilde G and B for one matrix, with the functional-equation report"""

    @classmethod
    def parse(cls, data):
        from hermitian_lattices.matrices import LocalHermitian
        from quadratic_symbols.local import splitting_type

        serializer = SiegelRequestSerializer(data=data)
        if not serializer.is_valid():
            raise InvalidInput(f"invalid Siegel request: {serializer.errors}")
        request = serializer.validated_data
        ctx = splitting_type(request['T']['D'], request['T']['p'])
        T = LocalHermitian.from_dict(ctx, request['T'])
        return T, {
            'route': request['route'], 'order': request['order'],
            'andrianov': request['andrianov'], 'expansion': request['expansion'],
        }

    @classmethod
    def closed_forms(cls, T):
        """(G, B) closed forms for T in normal form, or (None, None) where none applies"""
        from local_densities.closed_forms import unimodular_split

        try:
            r, _ = unimodular_split(T)
        except InvalidInput:
            return None, None
        return polynomials.G_closed(T.ctx, T.m, r), polynomials.B_closed(T.ctx, T.m, r)

    @classmethod
    def compute(cls, T, route='auto', order=4, andrianov=False, expansion=False):
        result = polynomials.recover_F(T, route)
        tilde = result.tilde()
        G = polynomials.G_poly(T, route)
        B = polynomials.B_poly(T, order, route)
        G_closed, B_closed = cls.closed_forms(T)
        if G_closed is not None and G_closed != G:
            logger.warning(f"G({T!r}) = {G} differs from the closed form {G_closed}")
        report = dict(result.to_dict())
        report.update({
            'G': str(G),
            'G_closed': None if G_closed is None else str(G_closed),
            'tilde_G': str(polynomials.tilde_G(T, route)),
            'B': str(B.polynomial if B.exact else B.series),
            'B_exact': B.exact,
            'B_closed': None if B_closed is None else str(B_closed),
            'functional_equations': [
                {'equation': name, 'holds': holds}
                for name, holds in polynomials.functional_equations(T, tilde)
            ],
        })
        if andrianov:
            report['S'] = str(polynomials.andrianov_S(T, order))
        if expansion:
            report['g_expansion'] = polynomials.g_expansion(T, route).to_dict()
        logger.info(f"Siegel report for {T!r}: F = {result.F}, G = {G}")
        return SiegelReportSerializer(report).data

    @classmethod
    def run(cls, data):
        T, options = cls.parse(data)
        return cls.compute(T, **options)
