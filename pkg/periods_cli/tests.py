import importlib
import json
import sys
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from hermitian_periods.exceptions import InvalidInput

from .commands import EXIT_BUDGET, EXIT_IO, EXIT_VERIFICATION, int_list
from .runner import budget_override, load_json, suite_jobs, validate_config


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def call(self, name, *args, **options):
        """Runs a command writing its report into the temp dir; returns (report, stdout)"""
        out = StringIO()
        path = self.dir / f"{name}.json"
        call_command(name, *args, output=str(path), stdout=out, stderr=StringIO(), **options)
        return json.loads(path.read_text()), out.getvalue()

    def assertExit(self, code, name, *args, **options):
        with self.assertRaises(CommandError) as caught:
            self.call(name, *args, **options)
        self.assertEqual(caught.exception.returncode, code)


class RunConfigTests(SimpleTestCase):
    def test_suite_defaults(self):
        config = validate_config({'command': 'suite', 'D': 4, 'primes': [5, 3, 3], 'm': [2, 1]})
        self.assertEqual(config['primes'], [3, 5])
        self.assertEqual(config['m'], [1, 2])
        self.assertTrue(config['allow_calibration'])
        self.assertEqual(config['workers'], 1)
        self.assertEqual(config['rankin_cutoff'], 10 ** 4)

    def test_rejects_bad_discriminant(self):
        with self.assertRaises(InvalidInput):
            validate_config({'command': 'lvalue', 'D': 5})

    def test_rejects_composite_prime(self):
        with self.assertRaises(InvalidInput):
            validate_config({'command': 'suite', 'D': 4, 'primes': [4], 'm': [1]})

    def test_int_list(self):
        self.assertEqual(int_list('2,3,5'), [2, 3, 5])

    def test_inline_json(self):
        self.assertEqual(load_json('{"diag": [1]}'), {'diag': [1]})
        with self.assertRaises(InvalidInput):
            load_json('{diag')

    def test_budget_override_restores(self):
        from django.conf import settings

        before = settings.LATTICE_SETTINGS['ENUMERATION_BUDGET']
        with budget_override(7):
            self.assertEqual(settings.LATTICE_SETTINGS['ENUMERATION_BUDGET'], 7)
        self.assertEqual(settings.LATTICE_SETTINGS['ENUMERATION_BUDGET'], before)


class LValueCommandTests(CommandTestCase):
    def test_completed_zeta_two(self):
        report, out = self.call('lvalue', i=2, parity='even')
        self.assertEqual(report['result'], {'value': '1/12', 'pi_exp': '0', 'sqrt': 1})
        self.assertTrue(report['passed'])
        self.assertEqual(json.loads(out), report)

    def test_deterministic(self):
        first, _ = self.call('lvalue', i=4)
        second_path = self.dir / 'again.json'
        call_command('lvalue', i=4, output=str(second_path), stdout=StringIO(), stderr=StringIO())
        self.assertEqual((self.dir / 'lvalue.json').read_text(), second_path.read_text())

    def test_parity_mismatch_is_input_error(self):
        self.assertExit(EXIT_IO, 'lvalue', i=3, parity='even', D=4)


class DensityCommandTests(CommandTestCase):
    def test_budget_exhaustion(self):
        self.assertExit(EXIT_BUDGET, 'density', p=3, D=4, S='{"m": 1, "diag": [1]}', budget=1)

    def test_bad_matrix_json(self):
        self.assertExit(EXIT_IO, 'density', p=3, D=4, S='{"m": 1, "diag": ')


class VerifyCommandTests(CommandTestCase):
    def test_calibrated_passes(self):
        report, _ = self.call('verify', family='P', m=1, p=3, D=4, order=2)
        self.assertTrue(report['passed'])

    def test_literal_mismatch(self):
        self.assertExit(EXIT_VERIFICATION, 'verify', family='H', m=1, p=3, D=4, order=3, literal=True)
        report = json.loads((self.dir / 'verify.json').read_text())
        self.assertFalse(report['passed'])
        self.assertEqual(report['result']['reports'][0]['first_mismatch'], 1)


class FormCommandTests(CommandTestCase):
    def _cm_form_file(self):
        from global_assembly.forms import eta_product

        path = self.dir / 'cm.json'
        path.write_text(json.dumps({
            'weight': 5, 'level': 4, 'char_disc': -4, 'coeffs': eta_product({1: 4, 2: 2, 4: 4}, 120),
        }))
        return str(path)

    def test_lift_delta(self):
        report, _ = self.call('lift', m=1, D=4, form='delta', T='{"diag": [1]}')
        self.assertAlmostEqual(abs(float(report['result']['coefficient']['value'][0])), 1.0, places=8)

    def test_missing_form_file(self):
        self.assertExit(EXIT_IO, 'lift', m=1, D=4, form=str(self.dir / 'absent.json'), T='{"diag": [1]}')

    def test_period_vanishing_lift(self):
        report, _ = self.call('period', m=2, D=4, form=self._cm_form_file(), euler_cutoff=100)
        period = report['result']['period']
        self.assertTrue(period['lift_vanishes'])
        self.assertTrue(period['m2_consistency']['passed'])
        self.assertTrue(report['passed'])


class SuiteCommandTests(CommandTestCase):
    def test_inert_rank_one(self):
        report, _ = self.call('suite', D=4, primes=[3], m=[1], order=2, rankin_cutoff=40)
        result = report['result']
        self.assertTrue(result['accepted'], result['failed'])
        self.assertIn('period/m2_consistency', result['jobs'])
        self.assertIn('siegel/unimodular/D=4,p=3/m=1', result['jobs'])
        self.assertIn('density/D=4,p=3/m=1', result['jobs'])
        self.assertIn('period/rankin/D=4/m=1', result['jobs'])
        self.assertEqual(result['jobs']['qpoch/q_binomial']['failed_lengths'], [])

    def test_failing_job_exits_nonzero(self):
        jobs = [('density/failing', lambda: {'passed': False, 'calibrated': False})]
        with mock.patch('periods_cli.runner.suite_jobs', return_value=jobs):
            self.assertExit(EXIT_VERIFICATION, 'suite', D=4, primes=[3], m=[1])


class SuiteJobTests(SimpleTestCase):
    def _labels(self, **overrides):
        data = {'command': 'suite', 'D': 4, 'primes': [2, 3], 'm': [1, 2], **overrides}
        return [label for label, _ in suite_jobs(validate_config(data))]

    def test_every_check_has_a_job(self):
        labels = self._labels()
        for family in ('H', 'assembly', 'lambda', 'P', 'K', 'koecher'):
            self.assertIn(f"verify/{family}/D=4,p=3/m=2/d0=1", labels)
        for prefix in ('density', 'siegel/functional_equations', 'verify/L'):
            self.assertIn(f"{prefix}/D=4,p=2/m=1", labels)
            self.assertIn(f"{prefix}/D=4,p=3/m=2", labels)
        self.assertIn('verify/H_parts/D=4,p=2/m=2', labels)
        self.assertNotIn('verify/H_parts/D=4,p=2/m=1', labels)
        self.assertNotIn('verify/zeta/D=4,p=2/m=1/d0=1', labels)
        self.assertIn('qpoch/q_binomial', labels)
        self.assertIn('period/rankin/D=4/m=1', labels)

    def test_dyadic_unit_classes_each_get_jobs(self):
        from quadratic_symbols.local import splitting_type

        labels = self._labels(primes=[2], m=[1])
        for d0 in splitting_type(4, 2).unit_classes():
            self.assertIn(f"verify/H/D=4,p=2/m=1/d0={d0}", labels)

    def test_rankin_needs_degree_one_and_a_cutoff(self):
        self.assertNotIn('period/rankin/D=4/m=1', self._labels(m=[2]))
        self.assertNotIn('period/rankin/D=4/m=1', self._labels(rankin_cutoff=0))
        self.assertNotIn('period/rankin/D=3/m=1', self._labels(D=3))


class SettingsTests(SimpleTestCase):
    def test_environ_fallback_is_logged(self):
        from hermitian_periods import settings as project_settings

        self.addCleanup(importlib.reload, project_settings)
        with mock.patch.dict(sys.modules, {'environ': None}):
            with self.assertLogs('hermitian_periods.settings', level='WARNING'):
                importlib.reload(project_settings)
        self.assertEqual(project_settings.LATTICE_SETTINGS['DEFAULT_ORDER'], 4)
