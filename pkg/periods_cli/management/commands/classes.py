from hermitian_periods.exceptions import InvalidInput

from periods_cli.commands import PeriodsCommand
from periods_cli.runner import load_json


class Command(PeriodsCommand):
    help = 'Local class representatives, or the mass formula for a global matrix'
    command = 'classes'
    formulas = ('local class enumeration', 'mass formula')

    def add_command_arguments(self, parser):
        parser.add_argument('--D', type=int, required=True)
        parser.add_argument('--p', type=int, help='Prime for local classes')
        parser.add_argument('--m', type=int, default=1)
        parser.add_argument('--d', type=int, default=0, help='ord_p det of the classes')
        parser.add_argument('--d0', type=int, help='Norm class of the determinant unit part')
        parser.add_argument('--mass', help='Global matrix JSON: compare both sides of the mass formula')

    def run(self, options):
        from hermitian_lattices.services import LatticeService
        from quadratic_symbols.services import SymbolService

        if options['mass']:
            T = LatticeService.parse({**load_json(options['mass'], 'mass'), 'D': options['D']})
            report = LatticeService.mass_report(T)
            return report, report['agree']
        if options['p'] is None:
            raise InvalidInput("local classes need --p")
        ctx = SymbolService.context(options['D'], options['p'])
        reps = LatticeService.enumerate_classes(ctx, options['m'], options['d'], options['d0'])
        return {'context': ctx.describe(), 'classes': [rep.to_dict() for rep in reps]}, True
