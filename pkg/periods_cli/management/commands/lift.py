from periods_cli.commands import PeriodsCommand
from periods_cli.runner import load_json


class Command(PeriodsCommand):
    help = 'One Fourier coefficient a(T) of the lift I_m(f)'
    command = 'lift'
    formulas = ('lift coefficient as a product of local Siegel polynomials',)

    def add_command_arguments(self, parser):
        parser.add_argument('--m', type=int, required=True)
        parser.add_argument('--D', type=int, required=True)
        parser.add_argument('--form', required=True, help="Form JSON file, or 'delta'")
        parser.add_argument('--T', required=True, help='Matrix JSON, inline or @file')
        parser.add_argument('--route', choices=('auto', 'character', 'overlattice'), default='auto')

    def run(self, options):
        from global_assembly.services import FormService, LiftService

        f = FormService.load(options['form'])
        data = {'m': options['m'], 'D': options['D'], 'T': load_json(options['T'], 'T'), 'route': options['route']}
        return {'form': f.to_dict(), 'coefficient': LiftService.run(data, f)}, True
