from fractions import Fraction

from django.test import SimpleTestCase

from exact_algebra.laurent import LaurentPoly
from hermitian_lattices.matrices import LocalHermitian
from hermitian_periods.exceptions import InvalidInput, NonRationalCharacterSum
from quadratic_symbols.local import splitting_type

from . import character_sums, polynomials
from .services import SiegelService

X = LaurentPoly.var('X')
t = LaurentPoly.var('t')
u = LaurentPoly.var('u')


def _inert():
    return splitting_type(4, 3)


def _split():
    return splitting_type(4, 5)


class CharacterSumTests(SimpleTestCase):
    def test_cyclotomic_reduction(self):
        self.assertEqual(character_sums.cyclotomic_integer([0, 1, 1], 3, 1), -1)
        self.assertEqual(character_sums.cyclotomic_integer([2, 1, 1], 3, 1), 1)
        self.assertEqual(character_sums.cyclotomic_integer([5], 3, 0), 5)
        with self.assertRaises(NonRationalCharacterSum):
            character_sums.cyclotomic_integer([0, 1, 0], 3, 1)

    def test_mu_index(self):
        ctx = _inert()
        self.assertEqual(character_sums.mu_index(ctx, [[1]]), 1)
        self.assertEqual(character_sums.mu_index(ctx, [[Fraction(1, 3)]]), 9)
        self.assertEqual(character_sums.mu_index(ctx, [[Fraction(2, 9)]]), 81)
        self.assertEqual(character_sums.mu_index(_split(), [[Fraction(1, 5)]]), 25)
        self.assertEqual(character_sums.mu_index(splitting_type(3, 3), [[Fraction(1, 3)]]), 9)

    def test_depth_zero(self):
        T = LocalHermitian.identity(_inert(), 1)
        self.assertEqual(character_sums.siegel_partial(T, 0), LaurentPoly.constant(1))

    def test_unit_partial_series(self):
        T = LocalHermitian.identity(_inert(), 1)
        self.assertEqual(character_sums.siegel_partial(T, 1), 1 - u)

    def test_rank_one_partial_series(self):
        T = LocalHermitian.diagonal(_inert(), [3])
        expected = 1 + u.scale(2) - LaurentPoly.monomial(3, u=2)
        self.assertEqual(character_sums.siegel_partial(T, 2).truncate('u', 2), expected)

    def test_ord_gamma(self):
        self.assertEqual(character_sums.ord_gamma(LocalHermitian.diagonal(_inert(), [1, 3])), 1)
        self.assertEqual(character_sums.ord_gamma(LocalHermitian.theta(splitting_type(4, 2), 2)), 0)
        self.assertEqual(character_sums.ord_gamma(LocalHermitian.diagonal(splitting_type(3, 3), [9])), 1)


class RecoveryTests(SimpleTestCase):
    def test_unimodular(self):
        for ctx in (_inert(), _split()):
            for m in (1, 2):
                result = polynomials.recover_F(LocalHermitian.identity(ctx, m), route='character')
                self.assertEqual(result.F, LaurentPoly.constant(1))
                self.assertEqual(result.tilde(), LaurentPoly.constant(1))

    def test_rank_one_powers(self):
        ctx = _inert()
        for j in (1, 2):
            result = polynomials.recover_F(LocalHermitian.diagonal(ctx, [3 ** j]), route='character')
            expected = sum((LaurentPoly.monomial(3 ** i, X=i) for i in range(j + 1)), LaurentPoly())
            self.assertEqual(result.F, expected)
            self.assertEqual(result.ord_gamma, j)
        self.assertEqual(polynomials.tilde_F(LocalHermitian.diagonal(ctx, [3])), X + X ** -1)
        self.assertEqual(polynomials.tilde_F(LocalHermitian.diagonal(ctx, [9])), X ** 2 + 1 + X ** -2)

    def test_split_rank_one(self):
        result = polynomials.recover_F(LocalHermitian.diagonal(_split(), [5]), route='character')
        self.assertEqual(result.F, 1 + X.scale(5))

    def test_inert_rank_two(self):
        T = LocalHermitian.diagonal(_inert(), [1, 3])
        result = polynomials.recover_F(T, route='character')
        self.assertEqual(result.F, 1 - X.scale(9))
        self.assertEqual(result.tilde(), X - X ** -1)
        self.assertTrue(all(holds for _, holds in polynomials.functional_equations(T, result.tilde())))

    def test_ramified_rank_one(self):
        ctx = splitting_type(3, 3)
        self.assertEqual(polynomials.F0(LocalHermitian.diagonal(ctx, [3]), route='character'), LaurentPoly.constant(1))
        self.assertEqual(polynomials.F0(LocalHermitian.diagonal(ctx, [9]), route='character'), 1 + X.scale(3))

    def test_ramified_non_norm_diagonal(self):
        # diag(1, 6) after removing p^e: 6 / 3 is not a norm, so the space is hyperbolic
        T = LocalHermitian.diagonal(splitting_type(3, 3), [3, 18])
        partial = character_sums.siegel_partial(T, 2).truncate('u', 2)
        self.assertEqual(partial, 1 - u + LaurentPoly.monomial(81, u=2))
        result = polynomials.recover_F(T, route='overlattice')
        self.assertEqual(result.F, 1 + LaurentPoly.monomial(81, X=2))
        self.assertEqual(result.tilde(), X ** 2 + X ** -2)
        self.assertTrue(all(holds for _, holds in polynomials.functional_equations(T, result.tilde())))

    def test_ramified_norm_diagonal(self):
        T = LocalHermitian.diagonal(splitting_type(3, 3), [3, 9])
        result = polynomials.recover_F(T, route='overlattice')
        self.assertEqual(result.tilde(), X ** 2 - X ** -2)

    def test_routes_agree(self):
        for T in (
            LocalHermitian.diagonal(_inert(), [9]),
            LocalHermitian.diagonal(_split(), [25]),
            LocalHermitian.diagonal(_inert(), [1, 3]),
            LocalHermitian.diagonal(splitting_type(3, 3), [9]),
        ):
            self.assertEqual(
                polynomials.F0(T, route='character'), polynomials.F0(T, route='overlattice'), msg=repr(T),
            )

    def test_rejects_matrices_outside_tilde_her(self):
        with self.assertRaises(InvalidInput):
            polynomials.recover_F(LocalHermitian.diagonal(splitting_type(3, 3), [1]))
        with self.assertRaises(InvalidInput):
            polynomials.recover_F(LocalHermitian.identity(_inert(), 1), route='fourier')


class GAndBTests(SimpleTestCase):
    def test_closed_forms(self):
        self.assertEqual(polynomials.G_closed(_inert(), 1, 1), 1 + X.scale(3))
        self.assertEqual(polynomials.G_closed(_split(), 1, 1), 1 - X.scale(5))
        self.assertEqual(polynomials.G_closed(_inert(), 2, 1), 1 - X.scale(9))
        self.assertEqual(polynomials.G_closed(_inert(), 1, 1, variant='literal'), 1 + LaurentPoly.monomial(3, X=2))
        self.assertEqual(polynomials.G_closed(splitting_type(3, 3), 1, 1), LaurentPoly.constant(1))

    def test_G_matches_closed_form(self):
        self.assertEqual(polynomials.G_poly(LocalHermitian.diagonal(_inert(), [3])), 1 + X.scale(3))
        self.assertEqual(polynomials.G_poly(LocalHermitian.diagonal(_split(), [5])), 1 - X.scale(5))
        self.assertEqual(polynomials.G_poly(LocalHermitian.identity(_inert(), 2)), LaurentPoly.constant(1))

    def test_B_polynomial(self):
        B = polynomials.B_poly(LocalHermitian.diagonal(_inert(), [3]))
        self.assertTrue(B.exact)
        self.assertEqual(B.polynomial, LaurentPoly.constant(1))
        self.assertEqual(polynomials.B_closed(_inert(), 1, 1), LaurentPoly.constant(1))
        unit = polynomials.B_poly(LocalHermitian.identity(_inert(), 1))
        self.assertEqual(unit.polynomial, 1 + LaurentPoly.monomial(3, t=2))
        self.assertEqual(polynomials.B_closed(_inert(), 1, 0), 1 + LaurentPoly.monomial(3, t=2))

    def test_tilde_G_of_unit(self):
        self.assertEqual(polynomials.tilde_G(LocalHermitian.identity(_inert(), 1)), LaurentPoly.constant(1))

    def test_andrianov_series(self):
        S = polynomials.andrianov_S(LocalHermitian.identity(_inert(), 1), 2)
        self.assertEqual(S.coefficient(0), LaurentPoly.constant(1))
        self.assertTrue(S.coefficient(1).is_zero())
        self.assertEqual(S.coefficient(2), X ** 2 + 1 + X ** -2)

    def test_andrianov_series_rank_two(self):
        S = polynomials.andrianov_S(LocalHermitian.identity(_inert(), 2), 2)
        self.assertEqual(S.coefficient(0), LaurentPoly.constant(1))
        self.assertEqual(S.coefficient(2), (X ** 2).scale(10) + 2 + (X ** -2).scale(10))


class GExpansionTests(SimpleTestCase):
    def test_unit(self):
        result = polynomials.g_expansion(LocalHermitian.identity(_inert(), 1))
        self.assertEqual(result.expansion, LaurentPoly.constant(1))
        self.assertTrue(result.direct)

    def test_inert_rank_one(self):
        result = polynomials.g_expansion(LocalHermitian.diagonal(_inert(), [3]))
        self.assertEqual(result.expansion, X + X ** -1)
        self.assertTrue(result.direct and result.inverted)
        self.assertEqual(result.terms, 1)


class ServiceTests(SimpleTestCase):
    def test_report(self):
        report = SiegelService.run({'T': {'m': 1, 'diag': ['3'], 'D': 4, 'p': 3}, 'order': 2})
        self.assertEqual(report['ord_gamma'], 1)
        self.assertTrue(report['B_exact'])
        self.assertEqual(report['G'], report['G_closed'])
        self.assertTrue(all(item['holds'] for item in report['functional_equations']))

    def test_needs_a_prime(self):
        with self.assertRaises(InvalidInput):
            SiegelService.run({'T': {'m': 1, 'diag': ['3'], 'D': 4}})
