import math
from fractions import Fraction

import mpmath
from django.test import SimpleTestCase

from hermitian_lattices.matrices import GlobalHermitian
from hermitian_periods.exceptions import FormDataError, InvalidInput, PrecisionError
from quadratic_symbols.fields import make_field

from . import euler, forms, lift, lvalues, rankin
from .services import FormService, LiftService, LValueService, PeriodService

DELTA_HEAD = [1, -24, 252, -1472, 4830, -6048, -16744, 84480]


def _delta():
    return forms.delta_form(300)


def _cm_form(n_max=120):
    """eta(z)^4 eta(2z)^2 eta(4z)^4: weight 5, level 4, CM by Q(i)"""
    coeffs = forms.eta_product({1: 4, 2: 2, 4: 4}, n_max)
    return forms.PrimitiveFormData(5, 4, -4, coeffs, name='4.5.cm').validate()


class LValueTests(SimpleTestCase):
    def test_zeta_two(self):
        value = lvalues.dirichlet_L(2)
        self.assertEqual(value.rational, Fraction(1, 6))
        self.assertEqual(value.pi_exp, 2)

    def test_l_one_chi_gaussian(self):
        value = lvalues.L_one_chi(make_field(4))
        self.assertAlmostEqual(float(value.numeric()), math.pi / 4, places=12)

    def test_completed_zeta_two(self):
        self.assertEqual(LValueService.run({'i': 2, 'parity': 'even'}), {'value': '1/12', 'pi_exp': '0', 'sqrt': 1})

    def test_parity_mismatch(self):
        with self.assertRaises(InvalidInput):
            LValueService.run({'i': 3, 'parity': 'even', 'D': 4})

    def test_odd_needs_field(self):
        with self.assertRaises(InvalidInput):
            LValueService.run({'i': 3})

    def test_numeric_matches_exact(self):
        field = make_field(3)
        exact = lvalues.dirichlet_L(3, field=field).numeric()
        self.assertAlmostEqual(float(lvalues.L_numeric(3, 1, field)), float(exact), places=12)


class FormTests(SimpleTestCase):
    def test_delta_coefficients(self):
        self.assertEqual(forms.delta_coefficients(8), DELTA_HEAD)

    def test_a1_must_be_one(self):
        with self.assertRaises(FormDataError):
            forms.form_from_dict({'weight': 12, 'level': 1, 'char_disc': 1, 'coeffs': [2, -48]})

    def test_level_one_character(self):
        with self.assertRaises(FormDataError):
            forms.form_from_dict({'weight': 12, 'level': 1, 'char_disc': -4, 'coeffs': [1]})

    def test_non_multiplicative_rejected(self):
        coeffs = list(DELTA_HEAD)
        coeffs[5] += 1
        with self.assertRaises(FormDataError):
            forms.form_from_dict({'weight': 12, 'level': 1, 'char_disc': 1, 'coeffs': coeffs})

    def test_satake_delta(self):
        pair = forms.satake(_delta(), 2)
        self.assertAlmostEqual(float(abs(pair.alpha)), 1.0, places=12)
        trace = pair.alpha + pair.partner
        self.assertAlmostEqual(float(mpmath.re(trace)), -24 * 2 ** -5.5, places=12)
        self.assertTrue(pair.ramanujan)

    def test_cm_form(self):
        f = _cm_form()
        self.assertEqual([f.a(n) for n in (1, 2, 3, 4, 5, 13)], [1, -4, 0, 16, -14, -238])
        self.assertEqual(f.k, 2)

    def test_eta_product_weight(self):
        with self.assertRaises(InvalidInput):
            forms.eta_product({1: 4, 2: 2}, 10)

    def test_eta_n(self):
        f = _cm_form()
        self.assertTrue(forms.twist_fixes(f, (2,)))
        self.assertEqual(forms.eta_n(f, 1), 0)
        self.assertEqual(forms.eta_n(f, 2), 2)
        self.assertEqual(FormService.eta(f, 1)['lift_vanishes'], True)

    def test_twist_needs_coefficients(self):
        with self.assertRaises(FormDataError):
            forms.twist_fixes(_cm_form(20), (2,))


class EulerTests(SimpleTestCase):
    def test_zeta_interval(self):
        value = euler.dirichlet_partial(2, cutoff=1000)
        self.assertTrue(value.rigorous)
        self.assertIn(mpmath.pi ** 2 / 6, value.interval)

    def test_zeta_outside_convergence(self):
        with self.assertRaises(PrecisionError):
            euler.dirichlet_partial(1, cutoff=100)

    def test_adjoint_far_right(self):
        value = euler.adjoint_L(20, _delta(), cutoff=50)
        self.assertTrue(value.rigorous)
        self.assertAlmostEqual(float(value.value), 1.0, places=4)

    def test_edge_is_heuristic(self):
        value = euler.adjoint_L(1, _delta(), cutoff=100)
        self.assertFalse(value.rigorous)

    def test_cutoff_beyond_coefficients(self):
        with self.assertRaises(InvalidInput):
            euler.hecke_L(10, _delta(), cutoff=1000)

    def test_M_equals_L_when_twist_fixes(self):
        f = _cm_form()
        self.assertEqual(euler.M_equals_L_factorwise(f, 1, (2,), 3, primes_up_to=100), [])

    def test_M_needs_level_D(self):
        with self.assertRaises(InvalidInput):
            euler.M_euler(5, _delta(), 1, (), cutoff=50)


class LiftTests(SimpleTestCase):
    def setUp(self):
        self.field = make_field(4)
        self.f = _delta()

    def test_unit_coefficient(self):
        a = lift.lift_coefficient(GlobalHermitian(self.field, [1]), self.f)
        self.assertAlmostEqual(float(abs(a.value)), 1.0, places=10)

    def test_degree_one_recovers_form(self):
        for N, expected in ((3, 252), (5, 4830)):
            a = lift.lift_coefficient(GlobalHermitian(self.field, [N]), self.f)
            self.assertAlmostEqual(float(abs(a.value)), expected, places=6)

    def test_wrong_level_for_degree(self):
        with self.assertRaises(InvalidInput):
            lift.lift_coefficient(GlobalHermitian(self.field, [1]), _cm_form())

    def test_service(self):
        report = LiftService.run({'m': 1, 'D': 4, 'T': {'diag': [5]}}, self.f)
        self.assertEqual(report['m'], 1)
        self.assertAlmostEqual(abs(float(report['value'][0])), 4830, places=4)

    def test_service_degree_mismatch(self):
        with self.assertRaises(InvalidInput):
            LiftService.run({'m': 2, 'D': 4, 'T': {'diag': [5]}}, self.f)


class RankinTests(SimpleTestCase):
    def setUp(self):
        self.field = make_field(4)

    def test_mu_degree_one(self):
        mu = rankin.mu_factor(1, 6, self.field, 14)
        self.assertAlmostEqual(float(mu.numeric()), 8 * 4 / math.pi, places=10)

    def test_residue_constant_degree_one(self):
        value = rankin.residue_constant(1, 6, self.field)
        self.assertEqual(value.pi_exp, 11)
        self.assertEqual(value.rational, Fraction(4096 * 4096 * 6, 2 * math.factorial(11)))

    def test_partial_monotone(self):
        f = _delta()
        small = rankin.rankin_partial(1, f, 14, 3, self.field)
        large = rankin.rankin_partial(1, f, 14, 6, self.field)
        self.assertEqual(small.classes, 3)
        self.assertGreaterEqual(large.value, small.value)
        self.assertGreater(small.value, 0)

    def test_partial_convergence_region(self):
        with self.assertRaises(InvalidInput):
            rankin.rankin_partial(1, _delta(), 12, 3, self.field)

    def test_m2_consistency(self):
        report = rankin.check_m2_consistency()
        self.assertTrue(report['passed'])

    def test_period_degree_one(self):
        report = rankin.period_rhs(1, _delta(), self.field, cutoff=200)
        self.assertEqual(report.two_exponent, -13)
        self.assertEqual(report.D_exponent, 0)
        self.assertTrue(report.pi_exponent_ok)
        self.assertIsNotNone(report.period_from_residue)

    def test_vanishing_lift(self):
        report = rankin.period_rhs(2, _cm_form(), self.field, cutoff=100)
        self.assertTrue(report.lift_vanishes)
        self.assertEqual(report.two_exponent, -15)
        self.assertEqual(report.D_exponent, 7)
        self.assertEqual(report.rhs.rational, 0)

    def test_period_service(self):
        report = PeriodService.run({'m': 2, 'D': 4, 'euler_cutoff': 100}, _cm_form())
        self.assertTrue(report['m2_consistency']['passed'])
        self.assertTrue(report['lift_vanishes'])

    def test_unknown_reading(self):
        with self.assertRaises(InvalidInput):
            rankin.explicit_rankin_rhs(1, _delta(), self.field, 14, reading='combined', cutoff=200)

    def test_degree_one_rankin_identity_within_tolerance(self):
        for s in (14, 15):
            report = rankin.compare_rankin(1, _delta(), self.field, s, 40, euler_cutoff=300, prime_cutoff=50)
            self.assertEqual(report['reading'], 'direct')
            self.assertEqual(report['tolerance'], '0.005')
            self.assertTrue(report['agrees'], report['relative_discrepancy'])

    def test_discrepancy_above_tolerance_is_flagged(self):
        with self.assertLogs('global_assembly', level='WARNING'):
            report = rankin.compare_rankin(1, _delta(), self.field, 14, 3, euler_cutoff=300, prime_cutoff=50,
                                           tolerance=0)
        self.assertFalse(report['agrees'])

    def test_stated_readings(self):
        self.assertEqual(rankin.stated_reading(1), 'direct')
        self.assertEqual(rankin.stated_reading(3), 'doubled_s')
        self.assertEqual(rankin.stated_reading(2), 'combined')
