from global_assembly.rankin import EVEN_READINGS, EXPONENT_VARIANTS, ODD_READINGS

from periods_cli.commands import PeriodsCommand


class Command(PeriodsCommand):
    help = 'The period formula for I_m(f), with the Rankin-Selberg comparison when s is given'
    command = 'period'
    formulas = (
        'period formula',
        'Rankin-Selberg series through adjoint and M-type L-functions',
        'Rankin-Selberg series as an Euler product of H series',
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--m', type=int, required=True)
        parser.add_argument('--D', type=int, required=True)
        parser.add_argument('--form', required=True, help="Form JSON file, or 'delta'")
        parser.add_argument('--s', help='Real s, e.g. 14 or 29/2')
        parser.add_argument('--cutoff', type=int, help='det cutoff of the class-side partial sum')
        parser.add_argument('--euler-cutoff', type=int)
        parser.add_argument('--prime-cutoff', type=int, default=200)
        parser.add_argument('--reading', choices=ODD_READINGS + EVEN_READINGS)
        parser.add_argument('--exponent', choices=EXPONENT_VARIANTS, default='calibrated')

    def run(self, options):
        from global_assembly.services import FormService, PeriodService

        f = FormService.load(options['form'])
        data = {'m': options['m'], 'D': options['D'], 'prime_cutoff': options['prime_cutoff'],
                'exponent': options['exponent']}
        for key in ('s', 'cutoff', 'euler_cutoff', 'reading'):
            if options[key] is not None:
                data[key] = options[key]
        report = PeriodService.run(data, f)
        passed = report['pi_exponent_ok'] and report.get('m2_consistency', {'passed': True})['passed']
        passed = passed and report.get('rankin', {'agrees': True})['agrees']
        return {'form': f.to_dict(), 'period': report}, passed
