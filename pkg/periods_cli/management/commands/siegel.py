from siegel_series.polynomials import ROUTES

from periods_cli.commands import PeriodsCommand
from periods_cli.runner import load_json


class Command(PeriodsCommand):
    help = 'F, tilde F, G, B of the local Siegel series of T and the functional-equation report'
    command = 'siegel'
    formulas = ('Siegel series recovery', 'functional equations of tilde F', 'G and B closed forms')

    def add_command_arguments(self, parser):
        parser.add_argument('--D', type=int, required=True)
        parser.add_argument('--p', type=int, required=True)
        parser.add_argument('--T', required=True, help='Matrix JSON, inline or @file')
        parser.add_argument('--route', choices=ROUTES, default='auto')
        parser.add_argument('--order', type=int, default=4)
        parser.add_argument('--andrianov', action='store_true')
        parser.add_argument('--expansion', action='store_true', help='Also compare the G-expansion with tilde F0')

    def run(self, options):
        from siegel_series.services import SiegelService

        report = SiegelService.run({
            'T': {**load_json(options['T'], 'T'), 'D': options['D'], 'p': options['p']},
            'route': options['route'],
            'order': options['order'],
            'andrianov': options['andrianov'],
            'expansion': options['expansion'],
        })
        return report, all(entry['holds'] for entry in report['functional_equations'])
