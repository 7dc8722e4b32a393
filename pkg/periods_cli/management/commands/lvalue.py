from periods_cli.commands import PeriodsCommand


class Command(PeriodsCommand):
    help = 'Exact L(i, chi^i) or its completion Gamma_C(i) L(i, chi^i)'
    command = 'lvalue'
    formulas = ('generalized Bernoulli special values',)

    def add_command_arguments(self, parser):
        parser.add_argument('--i', type=int, required=True)
        parser.add_argument('--parity', choices=('even', 'odd'))
        parser.add_argument('--D', type=int)
        parser.add_argument('--plain', action='store_true', help='L(i, chi^i) without the Gamma factor')

    def run(self, options):
        from global_assembly.services import LValueService

        data = {'i': options['i'], 'completed': not options['plain']}
        for key in ('parity', 'D'):
            if options[key] is not None:
                data[key] = options[key]
        return LValueService.run(data), True
