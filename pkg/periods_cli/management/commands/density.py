from local_densities.counting import KINDS

from periods_cli.commands import PeriodsCommand
from periods_cli.runner import load_json


class Command(PeriodsCommand):
    help = 'Local density alpha, beta or upsilon of Hermitian matrices at one prime'
    command = 'density'
    formulas = ('counted local density', 'density consistency checks')

    def add_command_arguments(self, parser):
        parser.add_argument('--p', type=int, required=True)
        parser.add_argument('--D', type=int, required=True)
        parser.add_argument('--S', required=True, help='Matrix JSON, inline or @file')
        parser.add_argument('--T', help='Matrix JSON, inline or @file')
        parser.add_argument('--kind', choices=KINDS + ('alpha_partial', 'alpha_fast'), default='alpha')
        parser.add_argument('--stratum', type=int, nargs='+')
        parser.add_argument('--start', type=int)
        parser.add_argument('--halved', action='store_true')
        parser.add_argument('--checks', action='store_true', help='Also run the density consistency checks')

    def run(self, options):
        from local_densities.services import DensityService

        where = {'D': options['D'], 'p': options['p']}
        data = {'kind': options['kind'], 'S': {**load_json(options['S'], 'S'), **where}, 'halved': options['halved']}
        if options['T']:
            data['T'] = {**load_json(options['T'], 'T'), **where}
        if options['stratum']:
            data['stratum'] = options['stratum']
        if options['start'] is not None:
            data['start'] = options['start']
        kind, S, T, extra = DensityService.parse(data)
        payload = {'value': DensityService.report(DensityService.compute(kind, S, T, **extra))}
        passed = True
        if options['checks']:
            payload['checks'] = DensityService.checks(S, T)
            passed = all(check['passed'] for check in payload['checks'])
        return payload, passed
