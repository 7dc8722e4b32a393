from fractions import Fraction
from unittest import mock

from django.test import SimpleTestCase

from hermitian_lattices.matrices import LocalHermitian
from hermitian_periods.exceptions import BudgetExceeded, InvalidInput, StabilizationError
from quadratic_symbols.local import splitting_type

from . import checks, closed_forms, counting, density
from .services import DensityService


def _inert():
    return splitting_type(4, 3)


class CountingTests(SimpleTestCase):
    def test_split_unit_count(self):
        ctx = splitting_type(8, 3)
        S = LocalHermitian.identity(ctx, 1)
        self.assertEqual(counting.count_A(S, S, 1), 2)
        self.assertEqual(density.normalize(ctx, 2, 1, 1, 1, 1), Fraction(2, 3))

    def test_level_zero_counts_one_class(self):
        ctx = _inert()
        self.assertEqual(counting.count_A(LocalHermitian.identity(ctx, 2), LocalHermitian.identity(ctx, 1), 0), 1)

    def test_primitive_count_is_a_subset(self):
        ctx = _inert()
        S = LocalHermitian.identity(ctx, 2)
        T = LocalHermitian.diagonal(ctx, [3])
        self.assertLessEqual(counting.count_B(S, T, 2), counting.count_A(S, T, 2))


class DensityTests(SimpleTestCase):
    def test_inert_unit(self):
        value = density.alpha(LocalHermitian.identity(_inert(), 1))
        self.assertEqual(value.value, Fraction(4, 3))
        self.assertFalse(value.lifted)
        self.assertEqual(len(value.raw_counts), 2)

    def test_budget_after_first_level_pair_is_reported(self):
        T = LocalHermitian.identity(_inert(), 1)
        estimates = [(Fraction(1), 1, 1), (Fraction(2), 2, 2), BudgetExceeded('count', 10, 1)]
        with mock.patch.object(density, 'level_value', side_effect=estimates):
            with self.assertRaises(BudgetExceeded):
                density.alpha(T)

    def test_unstable_reports_last_two_estimates(self):
        T = LocalHermitian.identity(_inert(), 1)
        estimates = [(Fraction(k), k, k) for k in range(1, density.MAX_ADVANCE + 3)]
        with mock.patch.object(density, 'level_value', side_effect=estimates):
            with self.assertRaises(StabilizationError) as caught:
                density.alpha(T)
        last = density.MAX_ADVANCE + 2
        self.assertEqual(caught.exception.values, (Fraction(last - 1), Fraction(last)))

    def test_split_identity(self):
        ctx = splitting_type(4, 5)
        self.assertEqual(density.alpha(LocalHermitian.identity(ctx, 2)).value, Fraction(96, 125))

    def test_dyadic_theta(self):
        ctx = splitting_type(4, 2)
        self.assertEqual(density.alpha(LocalHermitian.theta(ctx, 2)).value, Fraction(3, 4))

    def test_odd_ramified_theta(self):
        ctx = splitting_type(3, 3)
        self.assertEqual(density.alpha(LocalHermitian.theta(ctx, 2), start=1).value, Fraction(8, 9))

    def test_odd_ramified_rank_one(self):
        ctx = splitting_type(3, 3)
        stored = LocalHermitian.diagonal(ctx, [3])
        self.assertEqual(density.alpha(stored).value, 2)
        self.assertEqual(density.upsilon(stored).value, 6)
        unit = LocalHermitian.diagonal(ctx, [1])
        value = density.alpha(unit)
        self.assertEqual(value.value, Fraction(2, 3))
        self.assertTrue(value.lifted)
        self.assertEqual(density.upsilon(unit).value, 2)

    def test_dyadic_ramified_rank_one(self):
        ctx = splitting_type(8, 2)
        unit = LocalHermitian.diagonal(ctx, [1])
        self.assertEqual(density.alpha(unit).value, Fraction(1, 2))
        self.assertEqual(density.upsilon(unit).value, 2)

    def test_scaled_unit(self):
        self.assertEqual(density.alpha(LocalHermitian.diagonal(_inert(), [3])).value, 4)

    def test_primitive_against_scaled(self):
        ctx = _inert()
        value = density.beta(LocalHermitian.identity(ctx, 4), LocalHermitian.diagonal(ctx, [3]))
        self.assertEqual(value.value, Fraction(2240, 2187))
        self.assertEqual(value.value, closed_forms.beta_unimodular_scaled(ctx, 2, 1))

    def test_fast_matches_count(self):
        T = LocalHermitian.diagonal(_inert(), [1, 3])
        fast = density.alpha_fast(T)
        self.assertEqual(fast.method, 'closed')
        self.assertEqual(fast.value, Fraction(16, 3))
        self.assertEqual(density.alpha(T).value, fast.value)

    def test_fast_dyadic_theta(self):
        ctx = splitting_type(4, 2)
        self.assertEqual(density.alpha_fast(LocalHermitian.theta(ctx, 2)).value, Fraction(3, 4))

    def test_unimodular_pair(self):
        ctx = _inert()
        expected = closed_forms.alpha_unimodular_pair(ctx, 1, 1)
        self.assertEqual(expected, Fraction(8, 9))
        counted = density.alpha(LocalHermitian.identity(ctx, 2), LocalHermitian.identity(ctx, 1))
        self.assertEqual(counted.value, expected)

    def test_unimodular_factor(self):
        self.assertEqual(density.unimodular_factor(_inert(), 2), Fraction(32, 27))
        self.assertEqual(density.unimodular_factor(splitting_type(4, 5), 1), Fraction(4, 5))
        self.assertEqual(density.unimodular_factor(splitting_type(3, 3), 2), Fraction(8, 9))

    def test_stratum_density(self):
        ctx = _inert()
        S = LocalHermitian.identity(ctx, 1)
        T = LocalHermitian.diagonal(ctx, [9])
        self.assertEqual(density.alpha_partial(S, T, 1).value, Fraction(4, 3))
        self.assertEqual(density.alpha_partial(S, T, 1, halved=True).value, Fraction(2, 3))
        self.assertEqual(density.alpha_partial(S, T, 0).value, 0)

    def test_mismatched_primes_rejected(self):
        S = LocalHermitian.identity(_inert(), 1)
        T = LocalHermitian.identity(splitting_type(4, 5), 1)
        with self.assertRaises(InvalidInput):
            density.alpha(S, T)

    def test_degenerate_target_rejected(self):
        ctx = _inert()
        with self.assertRaises(InvalidInput):
            density.alpha(LocalHermitian.identity(ctx, 2), LocalHermitian.diagonal(ctx, [0]))


class CheckTests(SimpleTestCase):
    def test_scaling(self):
        self.assertTrue(checks.alpha_scaling_check(LocalHermitian.identity(_inert(), 1), 1).passed)

    def test_upsilon_relation(self):
        self.assertTrue(checks.upsilon_relation_check(LocalHermitian.identity(_inert(), 1)).passed)
        self.assertTrue(checks.upsilon_relation_check(LocalHermitian.diagonal(splitting_type(3, 3), [3])).passed)
        self.assertEqual(checks.upsilon_factor(splitting_type(8, 2), 1), Fraction(1, 4))

    def test_reduced_expansion(self):
        ctx = _inert()
        forward, inverse = checks.beta_from_alpha_inversion(
            LocalHermitian.identity(ctx, 2), LocalHermitian.diagonal(ctx, [1, 3]),
        )
        self.assertTrue(forward.passed)
        self.assertTrue(inverse.passed)

    def test_class_quotients(self):
        ctx = _inert()
        S = LocalHermitian.identity(ctx, 1)
        T = LocalHermitian.diagonal(ctx, [9])
        report = checks.omega_quotient_check(S, T)
        self.assertTrue(report.passed)
        self.assertEqual(report.lhs, Fraction(1, 9))
        self.assertTrue(checks.omega_quotient_check(S, T, stratum=1).passed)
        self.assertEqual(checks.tilde_omega_quotient_check(S, T).lhs, 1)

    def test_stratum_normalization(self):
        ctx = _inert()
        verdict = checks.partial_normalization_verdict(LocalHermitian.identity(ctx, 1), LocalHermitian.diagonal(ctx, [9]))
        self.assertEqual(verdict['verdict'], 'unhalved')


class ServiceTests(SimpleTestCase):
    def test_run(self):
        data = DensityService.run({'kind': 'alpha', 'S': {'m': 1, 'diag': [1], 'D': 4, 'p': 3}})
        self.assertEqual(data['value'], '4/3')
        self.assertEqual(data['context'], _inert().label)

    def test_beta_needs_target(self):
        with self.assertRaises(InvalidInput):
            DensityService.run({'kind': 'beta', 'S': {'m': 1, 'diag': [1], 'D': 4, 'p': 3}})

    def test_checks(self):
        ctx = _inert()
        reports = DensityService.checks(LocalHermitian.identity(ctx, 1), LocalHermitian.diagonal(ctx, [9]))
        self.assertTrue(all(r['passed'] for r in reports))
