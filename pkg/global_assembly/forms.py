"""
Primitive forms: ingested q-expansions, the internal Delta, Satake
parameters and the Q-twists f_Q that enter eta_n(f).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import gcd

import mpmath
import sympy
from django.conf import settings

from hermitian_periods.exceptions import FormDataError, InvalidInput

logger = logging.getLogger('global_assembly')


@dataclass
class PrimitiveFormData:
    """
    A primitive form given by a(1..N).  Level 1 means weight 2k on SL_2(Z)
    (odd-degree lifts); level D means weight 2k+1 on Gamma_0(D) with the
    Kronecker character of discriminant -D (even-degree lifts).
    """
    weight: int
    level: int
    char_disc: int
    coeffs: list
    name: str = ''
    warnings: list = dc_field(default_factory=list)

    @property
    def k(self) -> int:
        return self.weight // 2 if self.level == 1 else (self.weight - 1) // 2

    @property
    def is_level_one(self) -> bool:
        return self.level == 1

    @property
    def n_max(self) -> int:
        return len(self.coeffs)

    @property
    def field(self):
        from quadratic_symbols.fields import make_field

        if self.char_disc >= 0:
            raise InvalidInput(f"form {self.name or '?'} carries no quadratic character")
        return make_field(-self.char_disc)

    def a(self, N: int) -> int:
        if not 1 <= N <= self.n_max:
            raise FormDataError(f"a({N}) is outside the {self.n_max} known coefficients")
        return self.coeffs[N - 1]

    def chi(self, p: int) -> int:
        from quadratic_symbols.fields import kronecker_chi

        return 1 if self.is_level_one else kronecker_chi(self.field, p)

    def validate(self) -> 'PrimitiveFormData':
        if not self.coeffs or self.coeffs[0] != 1:
            raise FormDataError("a(1) must be 1 for a normalized primitive form")
        if self.is_level_one:
            if self.weight % 2:
                raise FormDataError(f"level 1 needs even weight, got {self.weight}")
        else:
            if self.weight % 2 == 0:
                raise FormDataError(f"level {self.level} needs odd weight, got {self.weight}")
            if self.char_disc != -self.level:
                raise FormDataError(f"level {self.level} form must carry the character of -{self.level}")
        _check_multiplicative(self)
        for p in sympy.primerange(2, self.n_max + 1):
            bound = 2 * mpmath.mpf(p) ** (self.k if not self.is_level_one else self.k - mpmath.mpf(1) / 2)
            if abs(self.a(p)) > bound:
                message = f"|a({p})| = {abs(self.a(p))} exceeds the Ramanujan bound {mpmath.nstr(bound, 8)}"
                logger.warning(message)
                self.warnings.append(message)
        return self

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'weight': self.weight,
            'level': self.level,
            'char_disc': self.char_disc,
            'k': self.k,
            'n_max': self.n_max,
            'warnings': list(self.warnings),
        }


def _check_multiplicative(f: PrimitiveFormData, samples: int = 40):
    checked = 0
    for mn in range(6, f.n_max + 1):
        for m in range(2, int(mn ** 0.5) + 1):
            n, r = divmod(mn, m)
            if r or gcd(m, n) != 1:
                continue
            if f.a(mn) != f.a(m) * f.a(n):
                raise FormDataError(f"a({mn}) != a({m}) a({n}): coefficients are not multiplicative")
            checked += 1
            if checked >= samples:
                return


# -- Delta -----------------------------------------------------------------------

def delta_coefficients(n_max: int) -> list:
    """
    tau(1..n_max) from Delta = q prod(1 - q^n)^24 = q (sum (-1)^j (2j+1) q^{j(j+1)/2})^8,
    the eighth power taken with the power-series recurrence
    c_k = (1/k) sum_j (9 j - k) a_j c_{k-j}.
    """
    if n_max < 1:
        raise InvalidInput(f"n_max must be positive, got {n_max}")
    length = n_max
    jacobi = {}
    j = 0
    while j * (j + 1) // 2 < length:
        jacobi[j * (j + 1) // 2] = (-1) ** j * (2 * j + 1)
        j += 1
    support = sorted(e for e in jacobi if e > 0)
    power = [0] * length
    power[0] = 1
    for k in range(1, length):
        total = 0
        for e in support:
            if e > k:
                break
            total += (9 * e - k) * jacobi[e] * power[k - e]
        power[k] = total // k
    logger.debug(f"Delta expanded to q^{n_max}")
    return power


def delta_form(n_max: int | None = None) -> PrimitiveFormData:
    """Delta with enough coefficients for the configured Euler cutoff."""
    if n_max is None:
        n_max = max(200, settings.LATTICE_SETTINGS['EULER_CUTOFF'])
    return PrimitiveFormData(12, 1, 1, delta_coefficients(n_max), name='Delta').validate()


def eta_product(exponents: dict, n_max: int) -> list:
    """
    Coefficients a(1..n_max) of prod_d eta(d z)^{r_d}, for exponents with
    sum d r_d = 24 so that the expansion starts at q.
    """
    if sum(d * r for d, r in exponents.items()) != 24:
        raise InvalidInput(f"eta product {exponents} does not start at q^1")
    series = [0] * n_max
    series[0] = 1
    for d, r in sorted(exponents.items()):
        if r < 0:
            raise InvalidInput("only holomorphic eta products with positive exponents are expanded")
        for n in range(1, n_max // d + 1):
            step = d * n
            for _ in range(r):
                # multiply by (1 - q^step), highest degree first
                for j in range(n_max - 1, step - 1, -1):
                    series[j] -= series[j - step]
    return series


# -- ingestion -------------------------------------------------------------------

def form_from_dict(data, name: str = '') -> PrimitiveFormData:
    from .serializers import FormFileSerializer

    serializer = FormFileSerializer(data=data)
    if not serializer.is_valid():
        raise FormDataError(f"invalid form data: {serializer.errors}")
    v = serializer.validated_data
    return PrimitiveFormData(v['weight'], v['level'], v['char_disc'], list(v['coeffs']), name=name).validate()


def ingest_form(path) -> PrimitiveFormData:
    """Read ``{"weight", "level", "char_disc", "coeffs"}`` JSON, or the literal name ``delta``."""
    if str(path).lower() == 'delta':
        return delta_form()
    with open(path) as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormDataError(f"{path}: not JSON ({exc})") from exc
    form = form_from_dict(data, name=str(path))
    logger.info(f"Ingested {form.name}: weight {form.weight}, level {form.level}, {form.n_max} coefficients")
    return form


# -- Satake parameters -------------------------------------------------------------

@dataclass(frozen=True)
class SatakePair:
    """(alpha_p, alpha_p') with alpha_p + alpha_p' the normalized a(p)."""
    p: int
    alpha: object
    partner: object

    @property
    def modulus(self):
        return abs(self.alpha)

    @property
    def ramanujan(self) -> bool:
        return abs(self.modulus - 1) < mpmath.mpf(10) ** -10

    def to_dict(self) -> dict:
        return {
            'p': self.p,
            'alpha': mpmath.nstr(self.alpha, 15),
            'partner': mpmath.nstr(self.partner, 15),
            'abs_alpha': mpmath.nstr(self.modulus, 15),
            'ramanujan': self.ramanujan,
        }


def satake(f: PrimitiveFormData, p: int) -> SatakePair:
    """
    Level 1: alpha + alpha^{-1} = p^{-k+1/2} a(p).  Level D, p prime to D:
    alpha + chi(p) alpha^{-1} = p^{-k} a(p).  p | D: alpha = p^{-k} a(p).
    """
    if not sympy.isprime(p):
        raise InvalidInput(f"{p} is not prime")
    a_p = mpmath.mpf(f.a(p))
    if f.is_level_one:
        trace = a_p * mpmath.mpf(p) ** (mpmath.mpf(1) / 2 - f.k)
        c = 1
    elif f.level % p == 0:
        alpha = mpmath.mpc(a_p * mpmath.mpf(p) ** -f.k)
        return SatakePair(p, alpha, mpmath.conj(alpha))
    else:
        trace = a_p * mpmath.mpf(p) ** -f.k
        c = f.chi(p)
    alpha = (trace + mpmath.sqrt(mpmath.mpc(trace * trace - 4 * c))) / 2
    pair = SatakePair(p, alpha, c / alpha)
    if not pair.ramanujan:
        logger.warning(f"|alpha_{p}| = {mpmath.nstr(pair.modulus, 10)} for {f.name or 'form'}")
    return pair


# -- twists and eta_n -------------------------------------------------------------

def fQ_twist(f: PrimitiveFormData, Q) -> dict:
    """Prime coefficients of f_Q: chi_Q(p) c_f(p) for p not in Q, chi'_Q(p) conj(c_f(p)) for p in Q."""
    from quadratic_symbols.fields import chi_Q, chi_Q_prime

    if f.is_level_one:
        raise InvalidInput("Q-twists are defined for level-D forms")
    field = f.field
    Q = tuple(sorted(Q))
    twisted = {}
    for p in sympy.primerange(2, f.n_max + 1):
        c = f.a(p)
        if p in Q:
            twisted[p] = chi_Q_prime(field, Q, p) * c
        else:
            twisted[p] = chi_Q(field, Q, p) * c
    return twisted


def sturm_bound(f: PrimitiveFormData) -> int:
    return 4 * f.k * f.level


def twist_fixes(f: PrimitiveFormData, Q) -> bool:
    """Whether f_Q = f, by prime coefficients up to the Sturm-style bound 4 k D."""
    bound = sturm_bound(f)
    if f.n_max < bound:
        raise FormDataError(f"deciding f_Q = f needs a(n) for n <= {bound}, only {f.n_max} known")
    logger.warning(f"f_Q = f decided by coefficients up to {f.n_max} (heuristic bound {bound})")
    twisted = fQ_twist(f, Q)
    return all(twisted[p] == f.a(p) for p in twisted)


def subsets(primes):
    for size in range(len(primes) + 1):
        yield from combinations(primes, size)


def eta_n(f: PrimitiveFormData, n: int) -> int:
    """sum over Q in Q_D with f_Q = f of chi_Q((-1)^n)."""
    from quadratic_symbols.fields import chi_Q

    field = f.field
    total = 0
    for Q in subsets(field.prime_divisors):
        if twist_fixes(f, Q):
            total += chi_Q(field, Q, (-1) ** n)
    if total == 0:
        logger.warning(f"eta_{n}({f.name or 'form'}) = 0: the degree-{2 * n} lift vanishes identically")
    return total
