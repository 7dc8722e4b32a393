import logging

from .fields import chi_Q, chi_q, kronecker_chi, make_field
from .hilbert import hilbert_symbol
from .local import parse_context, splitting_type

logger = logging.getLogger('quadratic_symbols')


class SymbolService:
    """Entry points used by the other apps and the command line"""

    @classmethod
    def context(cls, D, p, budget=None):
        """Build the local context of K = Q(sqrt -D) at p"""
        ctx = splitting_type(make_field(D), p, budget=budget)
        logger.info(f"Local context {ctx.label}: {ctx.splitting}, f={ctx.f}, e={ctx.e}, i_p={ctx.i_p}")
        return ctx

    @classmethod
    def context_from_label(cls, label):
        return parse_context(label)

    @classmethod
    def chi(cls, D, a):
        return kronecker_chi(make_field(D), a)

    @classmethod
    def chi_q(cls, D, q, a):
        return chi_q(make_field(D), q, a)

    @classmethod
    def chi_Q(cls, D, Q, a):
        return chi_Q(make_field(D), Q, a)

    @classmethod
    def hilbert(cls, a, b, p):
        return hilbert_symbol(a, b, p)

    @classmethod
    def character_subsets(cls, D):
        """Every subset Q of Q_D, smallest first; used by the Q-sums of the Rankin-Selberg series"""
        primes = make_field(D).prime_divisors
        subsets = []
        for mask in range(2 ** len(primes)):
            subsets.append(tuple(q for i, q in enumerate(primes) if mask >> i & 1))
        return sorted(subsets, key=lambda Q: (len(Q), Q))
