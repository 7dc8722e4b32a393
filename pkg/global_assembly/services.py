import logging

import mpmath

from hermitian_periods.exceptions import InvalidInput

from . import euler, forms, lift, lvalues, rankin
from .serializers import (
    EulerRequestSerializer, LiftRequestSerializer, LValueRequestSerializer, PeriodRequestSerializer,
    SatakeSerializer,
)

logger = logging.getLogger('global_assembly')


def _validated(serializer_class, data, what):
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise InvalidInput(f"invalid {what} request: {serializer.errors}")
    return serializer.validated_data


class FormService:
    """Loads primitive forms and tabulates their Satake parameters"""

    @classmethod
    def load(cls, source):
        """A JSON form file, or ``delta`` for the internal Delta"""
        return forms.ingest_form(source)

    @classmethod
    def satake_table(cls, f, primes):
        return [SatakeSerializer(forms.satake(f, p).to_dict()).data for p in primes]

    @classmethod
    def eta(cls, f, n):
        value = forms.eta_n(f, n)
        return {'n': n, 'eta': value, 'lift_vanishes': value == 0}


class LValueService:
    """Exact Dirichlet and completed L-values at positive integers"""

    @classmethod
    def run(cls, data):
        from quadratic_symbols.fields import make_field

        request = _validated(LValueRequestSerializer, data, 'L-value')
        field = make_field(request['D']) if 'D' in request else None
        i = request['i']
        if 'parity' in request and request['parity'] != lvalues.parity_of(i):
            raise InvalidInput(f"parity {request['parity']!r} does not match i={i}")
        if request['completed']:
            value = lvalues.completed_L(i, field)
        else:
            value = lvalues.dirichlet_L(i, field=field)
        logger.info(f"L-value i={i}, completed={request['completed']}: {value}")
        return value.to_dict()


class EulerService:
    """Partial Euler products for a form"""

    @classmethod
    def run(cls, data, f=None):
        from quadratic_symbols.fields import make_field

        request = _validated(EulerRequestSerializer, data, 'Euler product')
        family = request['family']
        s = mpmath.mpf(str(request['s']))
        cutoff = request.get('cutoff')
        if family == 'dirichlet_L':
            field = make_field(data['D']) if 'D' in data else None
            return euler.dirichlet_partial(s, field, request['twist'], cutoff).to_dict()
        if f is None:
            raise InvalidInput(f"{family} needs a form")
        if family == 'hecke_L':
            value = euler.hecke_L(s, f, request['twist'], cutoff)
        elif family == 'adjoint_L':
            field = make_field(data['D']) if 'D' in data else None
            value = euler.adjoint_L(s, f, request['twist'], cutoff, field)
        else:
            value = euler.M_euler(s, f, request['twist'], request['Q'], cutoff)
        return value.to_dict()


class LiftService:
    """Fourier coefficients of I_m(f)"""

    @classmethod
    def run(cls, data, f):
        from hermitian_lattices.services import LatticeService

        request = _validated(LiftRequestSerializer, data, 'lift')
        T = LatticeService.parse({**request['T'], 'm': request['m'], 'D': request['D']})
        coefficient = lift.lift_coefficient(T, f, request['m'], request['route'])
        return coefficient.to_dict()


class PeriodService:
    """The period formula, the m = 2 consistency check and the Rankin comparison"""

    @classmethod
    def parse(cls, data):
        from quadratic_symbols.fields import make_field

        request = _validated(PeriodRequestSerializer, data, 'period')
        return request, make_field(request['D'])

    @classmethod
    def run(cls, data, f):
        request, field = cls.parse(data)
        m = request['m']
        report = rankin.period_rhs(m, f, field, request.get('euler_cutoff')).to_dict()
        if m == 2:
            report['m2_consistency'] = rankin.check_m2_consistency()
        if 's' in request:
            s = request['s']
            report['mu'] = rankin.mu_factor(m, f.k, field, s).to_dict()
            report['residue_constant'] = rankin.residue_constant(m, rankin.weight_l(m, f.k), field).to_dict()
            if 'cutoff' in request:
                report['rankin'] = rankin.compare_rankin(
                    m, f, field, s, request['cutoff'], request.get('euler_cutoff'), request['prime_cutoff'],
                )
            else:
                report['explicit'] = rankin.explicit_rankin_rhs(
                    m, f, field, s, request.get('reading'), request.get('euler_cutoff'),
                ).to_dict()
                report['assembled'] = rankin.assembled_rankin_rhs(
                    m, f, field, s, request['exponent'], request['prime_cutoff'],
                ).to_dict()
        return report
