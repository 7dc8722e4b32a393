from fractions import Fraction

from django.test import SimpleTestCase

from exact_algebra.laurent import LaurentPoly
from exact_algebra.series import rational_series
from hermitian_lattices.matrices import LocalHermitian
from hermitian_periods.exceptions import BudgetExceeded, InvalidInput, VerificationFailure
from quadratic_symbols.local import splitting_type

from . import bruteforce, closed_forms, verification
from .families import SeriesFamily, VerificationReport
from .services import VerificationService

X = LaurentPoly.var('X')
Y = LaurentPoly.var('Y')
t = LaurentPoly.var('t')


def _inert():
    return splitting_type(4, 3)


def _split():
    return splitting_type(4, 5)


def _odd_ramified():
    return splitting_type(3, 3)


def _dyadic():
    return splitting_type(4, 2)


def _contexts():
    return _inert(), _split(), _odd_ramified(), _dyadic()


def _one_minus(coeff, monomial):
    return 1 - monomial.scale(coeff)


class FamilyTests(SimpleTestCase):
    def test_unknown_family(self):
        with self.assertRaises(InvalidInput):
            SeriesFamily('W', 1, _inert(), None)

    def test_unknown_variant(self):
        with self.assertRaises(InvalidInput):
            closed_forms.P_closed(_inert(), 1, 2, variant='guessed')

    def test_failure_raises(self):
        report = VerificationReport('H', 'D=4,p=3', 1, 3, first_mismatch=1)
        self.assertFalse(report.passed)
        with self.assertRaises(VerificationFailure):
            report.raise_for_failure()
        self.assertEqual(report.to_dict()['first_mismatch'], 1)


class ClosedFormTests(SimpleTestCase):
    def test_L_inert(self):
        body = closed_forms.L_mp(_inert(), 1, 4).body
        expected = rational_series(1, [
            _one_minus(Fraction(1, 3), X ** 2 * t ** 2),
            _one_minus(Fraction(1, 3), X ** -2 * t ** 2),
        ], 4)
        self.assertEqual(body, expected)

    def test_L_ramified(self):
        body = closed_forms.L_mp(splitting_type(3, 3), 1, 3).body
        self.assertEqual(body, rational_series(1, [1 - X * t, 1 - X ** -1 * t], 3))

    def test_zeta_inert(self):
        body = closed_forms.zeta_closed(_inert(), 1, 3).body
        self.assertEqual(body, rational_series(Fraction(3, 4), [_one_minus(Fraction(1, 3), t)], 3))

    def test_zeta_split(self):
        body = closed_forms.zeta_closed(_split(), 1, 3).body
        self.assertEqual(body, rational_series(Fraction(5, 4), [_one_minus(Fraction(1, 5), t)], 3))

    def test_degree_bound(self):
        with self.assertRaises(InvalidInput):
            closed_forms.H_closed(_inert(), 4, 2)


class BruteForceTests(SimpleTestCase):
    def test_lambda_unimodular(self):
        self.assertEqual(bruteforce.lambda_star(_inert(), 1, 0), LaurentPoly.constant(Fraction(3, 4)))

    def test_lambda_prime(self):
        expected = ((X + X ** -1) * (Y + Y ** -1)).scale(Fraction(1, 4))
        self.assertEqual(bruteforce.lambda_star(_inert(), 1, 1), expected)
        self.assertEqual(bruteforce.lambda_sl(_inert(), 1, 1), expected)

    def test_H_rank_one_inert(self):
        ctx = _inert()
        factors = [_one_minus(Fraction(1, 3), t * X ** a * Y ** b) for a in (1, -1) for b in (1, -1)]
        expected = rational_series(_one_minus(Fraction(1, 9), t ** 2).scale(Fraction(3, 4)), factors, 2)
        self.assertEqual(bruteforce.H_bruteforce(ctx, 1, 2), expected)

    def test_zeta_ramified_not_enumerated(self):
        with self.assertRaises(InvalidInput):
            bruteforce.zeta_bruteforce(splitting_type(3, 3), 1, 2)


class VerificationTests(SimpleTestCase):
    def test_H_inert(self):
        ctx = _inert()
        self.assertTrue(verification.verify_H(ctx, 1, 3).passed)
        literal = verification.verify_H(ctx, 1, 3, variant='literal')
        self.assertEqual(literal.first_mismatch, 1)
        self.assertTrue(literal.monomials)

    def test_H_split(self):
        ctx = _split()
        report = verification.verify_H(ctx, 1, 2)
        self.assertTrue(report.passed)
        self.assertTrue(report.deltas)
        self.assertEqual(verification.verify_H(ctx, 1, 2, variant='literal').first_mismatch, 0)

    def test_H_every_context(self):
        for ctx in _contexts():
            for m in (1, 2):
                for d0 in ctx.unit_classes():
                    report = verification.verify_H(ctx, m, 3, d0)
                    self.assertIsNone(report.first_mismatch, f"{ctx.label} m={m} d0={d0}")

    def test_H_parts_ramified(self):
        for ctx in (_odd_ramified(), _dyadic()):
            for report in verification.verify_H_parts(ctx, 2, 3):
                self.assertTrue(report.passed, f"{ctx.label} {report.against}")

    def test_H_symmetries(self):
        for report in verification.verify_H_symmetries(_inert(), 1, 3):
            self.assertTrue(report.passed, report.against)

    def test_P_and_zeta_rank_one(self):
        for ctx in (_inert(), _split()):
            self.assertTrue(verification.verify_P(ctx, 1, 3).passed)
            self.assertTrue(verification.verify_zeta(ctx, 1, 3).passed)

    def test_split_rank_two(self):
        ctx = _split()
        self.assertIsNone(verification.verify_P(ctx, 2, 3).first_mismatch)
        self.assertIsNone(verification.verify_H(ctx, 2, 3).first_mismatch)

    def test_P_ramified(self):
        for ctx in (_odd_ramified(), _dyadic()):
            for m in (1, 2):
                for d0 in ctx.unit_classes():
                    report = verification.verify_P(ctx, m, 3, d0)
                    self.assertIsNone(report.first_mismatch, f"{ctx.label} m={m} d0={d0}")

    def test_lambda_equals_lambda_star(self):
        for i in range(3):
            self.assertTrue(verification.verify_lambda(_inert(), 1, i).passed)
        for d0 in _dyadic().unit_classes():
            self.assertTrue(verification.verify_lambda(_dyadic(), 1, 1, d0).passed)

    def test_zeta_from_Z_disagrees(self):
        report = verification.zeta_Z_consistency(_inert(), 1, 2)
        self.assertEqual(report.first_mismatch, 1)

    def test_K_chain(self):
        for report in verification.K_chain(_inert(), 1, 3):
            self.assertTrue(report.passed, report.against)

    def test_K_chain_ramified(self):
        for ctx in (_odd_ramified(), _dyadic()):
            for d0 in ctx.unit_classes():
                for report in verification.K_chain(ctx, 1, 3, d0):
                    self.assertIsNone(report.first_mismatch, f"{ctx.label} d0={d0} {report.against}")

    def test_koecher_chain_rank_one(self):
        for ctx in (_inert(), _split(), _odd_ramified()):
            tilde, round_trip, R = verification.koecher_chain(ctx, 1, 3)
            self.assertTrue(tilde.passed, ctx.label)
            self.assertTrue(round_trip.passed, ctx.label)
            self.assertIsNone(R.first_mismatch, ctx.label)

    def test_koecher_chain_rank_two(self):
        for ctx in (_inert(), _split()):
            for report in verification.koecher_chain(ctx, 2, 2):
                self.assertIsNone(report.first_mismatch, f"{ctx.label} {report.against}")

    def test_R_stated_assembly_differs_at_constant_term(self):
        R = verification.koecher_chain(_inert(), 1, 2, variant='literal')[2]
        self.assertEqual(R.first_mismatch, 0)

    def test_R_constant_term(self):
        ctx = _inert()
        tilde = [verification._tilde_P_closed(ctx, r, 2, 1, 'calibrated') for r in (0, 1)]
        R = closed_forms.R_from_tilde_P(ctx, 1, tilde)
        self.assertEqual(R.coefficient(0), LaurentPoly.constant(Fraction(3, 4)))

    def test_Q_inversion(self):
        ctx = _inert()
        self.assertTrue(verification.verify_Q_round_trip(ctx, 2, 2).passed)
        self.assertFalse(verification.verify_Q_round_trip(ctx, 2, 2, variant='literal').passed)
        self.assertTrue(verification.verify_Q_round_trip(_split(), 2, 2, variant='literal').passed)

    def test_assembly(self):
        for ctx in _contexts():
            for m in (1, 2):
                for d0 in ctx.unit_classes():
                    report = verification.verify_assembly(ctx, m, 3, d0)
                    self.assertIsNone(report.first_mismatch, f"{ctx.label} m={m} d0={d0}")

    def test_andrianov_unit(self):
        T = LocalHermitian.identity(_inert(), 1)
        self.assertTrue(verification.verify_andrianov(T, 4).passed)

    def test_L_rank_two(self):
        self.assertIsNone(verification.verify_L(_inert(), 2, 3).first_mismatch)

    def test_brute_degree_budget(self):
        with self.assertRaises(BudgetExceeded):
            verification.verify_P(_inert(), 3, 1)


class VerificationServiceTests(SimpleTestCase):
    def test_run(self):
        reports, accepted = VerificationService.run({'family': 'P', 'm': 1, 'D': 4, 'p': 3, 'order': 2})
        self.assertTrue(accepted)
        self.assertEqual(reports[0]['family'], 'P')
        self.assertIsNone(reports[0]['first_mismatch'])

    def test_calibration_not_allowed(self):
        reports, accepted = VerificationService.run({
            'family': 'H', 'm': 1, 'D': 4, 'p': 5, 'order': 1, 'allow_calibration': False,
        })
        self.assertTrue(all(r['passed'] for r in reports))
        self.assertFalse(accepted)

    def test_invalid(self):
        with self.assertRaises(InvalidInput):
            VerificationService.parse({'family': 'W', 'm': 1, 'D': 4, 'p': 3})
        with self.assertRaises(InvalidInput):
            VerificationService.parse({'family': 'P', 'm': 1, 'D': 4, 'p': 3, 'd0': 3})
