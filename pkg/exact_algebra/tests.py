from fractions import Fraction
from types import SimpleNamespace

from django.test import SimpleTestCase

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput

from .laurent import LaurentPoly, X, Y, T
from .qpoch import phi_m, phi_mp, pochhammer, verify_q_binomial_identity
from .quadext import QuadExt
from .series import TruncatedSeries, rational_series
from .symbolic import SymbolicReal, gamma_C, gamma_R


class QuadExtTests(SimpleTestCase):
    def test_arithmetic_in_q_sqrt3(self):
        s = QuadExt.sqrt(3)
        self.assertEqual(s * s, 3)
        self.assertEqual((1 + s) * (1 - s), -2)
        self.assertEqual((1 + s).inverse() * (1 + s), 1)

    def test_half_integer_prime_powers(self):
        self.assertEqual(QuadExt.prime_power(5, Fraction(1, 2)) ** 2, 5)
        self.assertEqual(QuadExt.prime_power(5, Fraction(-3, 2)) * QuadExt.prime_power(5, Fraction(3, 2)), 1)
        self.assertEqual(QuadExt.prime_power(2, 3), 8)

    def test_mixed_radicands_rejected(self):
        with self.assertRaises(InvalidInput):
            QuadExt.sqrt(2) + QuadExt.sqrt(3)


class LaurentPolyTests(SimpleTestCase):
    def test_inversion_and_negation(self):
        f = X + 2 * X ** -1
        self.assertEqual(f.invert('X'), X ** -1 + 2 * X)
        self.assertEqual(f.negate_variable('X'), -f)

    def test_canonical_text(self):
        f = LaurentPoly.monomial(Fraction(1, 2), X=2, t=1) + Y ** -1
        self.assertEqual(str(f), '1 * Y^-1 + 1/2 * X^2 t')

    def test_substitution_by_monomial(self):
        f = (1 + X) * (1 - X ** -1)
        g = f.substitute('X', 3 * Y)
        self.assertEqual(g, (1 + 3 * Y) * (1 - LaurentPoly.monomial(Fraction(1, 3), Y=-1)))

    def test_associativity(self):
        a, b, c = 1 + X, X - Y ** -1, T + QuadExt.sqrt(2) * X
        self.assertEqual((a * b) * c, a * (b * c))


class TruncatedSeriesTests(SimpleTestCase):
    def test_inverse_round_trip(self):
        f = TruncatedSeries(1 - 3 * X * T + LaurentPoly.monomial(Fraction(2, 5), Y=-1, t=2), 6)
        product = f * f.inverse()
        self.assertEqual(product, TruncatedSeries(1, 6))

    def test_geometric_expansion(self):
        s = rational_series(1, [1 - X * T], 3)
        self.assertEqual(s.coefficients(), [LaurentPoly.constant(1), X, X ** 2, X ** 3])

    def test_diff_localizes_first_mismatch(self):
        a = TruncatedSeries(1 + X * T + T ** 2, 3)
        b = TruncatedSeries(1 + X * T + 2 * T ** 2, 3)
        diff = a.diff(b)
        self.assertEqual(diff.first_mismatch, 2)
        self.assertTrue(a.diff(a).empty)


class PochhammerTests(SimpleTestCase):
    def test_small_products(self):
        U = LaurentPoly.var('U')
        q = LaurentPoly.var('q')
        self.assertEqual(pochhammer('U', 'q', 0), 1)
        self.assertEqual(pochhammer('U', 'q', 1), 1 - U)
        self.assertEqual(pochhammer('U', 'q', 2), (1 - U) * (1 - q * U))

    def test_pochhammer_q_q_is_phi(self):
        for m in range(11):
            self.assertEqual(pochhammer('q', 'q', m), phi_m('q', m))

    def test_phi_values(self):
        self.assertEqual(phi_m(Fraction(1, 3), 0), 1)
        self.assertEqual(phi_m(Fraction(1, 3), 2), Fraction(16, 27))
        self.assertEqual(phi_m(Fraction(-1, 7), 1), Fraction(8, 7))

    def test_phi_by_splitting_type(self):
        half = Fraction(1, 2)
        self.assertEqual(phi_mp(half, SimpleNamespace(splitting='inert'), 1), Fraction(3, 4))
        self.assertEqual(phi_mp(half, SimpleNamespace(splitting='split'), 1), Fraction(1, 4))
        self.assertEqual(phi_mp(half, SimpleNamespace(splitting='ramified'), 1), Fraction(1, 2))

    def test_q_binomial_identity(self):
        for length in range(7):
            report = verify_q_binomial_identity(length)
            self.assertTrue(report.holds, report.difference)

    def test_identity_budget(self):
        with self.assertRaises(BudgetExceeded):
            verify_q_binomial_identity(9)


class GammaFactorTests(SimpleTestCase):
    def test_gamma_C_values(self):
        self.assertEqual(gamma_C(1), SymbolicReal(1, pi_exp=-1))
        self.assertEqual(gamma_C(2), SymbolicReal(Fraction(1, 2), pi_exp=-2))
        self.assertEqual(gamma_C(3), SymbolicReal(Fraction(1, 2), pi_exp=-3))

    def test_duplication(self):
        for s in range(1, 11):
            self.assertEqual(gamma_C(s), gamma_R(s) * gamma_R(s + 1))

    def test_radicals_fold(self):
        self.assertEqual(SymbolicReal.power(4, Fraction(1, 2)), SymbolicReal(2))
        self.assertEqual(SymbolicReal.power(3, Fraction(3, 2)) * SymbolicReal.power(3, Fraction(1, 2)), 9)
