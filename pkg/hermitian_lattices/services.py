import logging

from hermitian_periods.exceptions import InvalidInput

from . import automorphisms, classes, jordan, mass
from .matrices import GlobalHermitian, gamma_invariant
from .serializers import HermitianMatrixSerializer, MassReportSerializer

logger = logging.getLogger('hermitian_lattices')


class LatticeService:
    """Entry points for matrices, classes, automorphisms and masses"""

    @classmethod
    def parse(cls, data, local=False, ctx=None):
        """Validate matrix JSON and build a GlobalHermitian, or a LocalHermitian with ``local``"""
        serializer = HermitianMatrixSerializer(data=data)
        if not serializer.is_valid():
            raise InvalidInput(f"invalid matrix: {serializer.errors}")
        if local or ctx is not None:
            return serializer.to_local(ctx)
        return serializer.to_global()

    @classmethod
    def gamma(cls, B):
        return gamma_invariant(B, B.field)

    @classmethod
    def normal_form(cls, A):
        form = jordan.normal_form(A)
        logger.info(f"Normal form at {A.ctx.label}: unimodular rank {form.unimodular_rank}, theta rank {form.theta_rank}")
        return form

    @classmethod
    def enumerate_classes(cls, ctx, m, d, d0=None):
        return classes.enumerate_classes(ctx, m, d, d0)

    @classmethod
    def equivalent(cls, A, B):
        return classes.equivalent(A, B)

    @classmethod
    def automorphisms(cls, T: GlobalHermitian):
        e_star, e = automorphisms.aut_counts(T)
        return {'e_star': e_star, 'e': e}

    @classmethod
    def determinant_index(cls, T):
        return automorphisms.l_pT(T)

    @classmethod
    def mass_report(cls, T: GlobalHermitian, route='upsilon'):
        """Compare the class side and the density side of the mass formula"""
        members = mass.genus(T)
        class_side = mass.mass_via_classes(T)
        density_side = mass.mass_via_densities(T, route=route)
        agree = density_side == class_side
        if agree:
            logger.info(f"Mass of {T!r}: {class_side} on both sides")
        else:
            logger.warning(f"Mass mismatch for {T!r}: classes {class_side}, densities {density_side}")
        return MassReportSerializer({
            'matrix': T.to_dict(),
            'classes': [member.to_dict() for member in members],
            'class_side': class_side,
            'density_side': density_side.to_dict(),
            'agree': agree,
        }).data
