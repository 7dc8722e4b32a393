import argparse

from periods_cli.commands import PeriodsCommand, int_list


class Command(PeriodsCommand):
    help = 'The acceptance matrix for one field: densities, series identities, Siegel series, masses, L-values, Rankin'
    command = 'suite'
    formulas = (
        'unimodular local densities and their consistency checks',
        'closed-form series against class sums',
        'K-series and Koecher-Maass chains',
        'unimodular Siegel series and functional equations',
        'Andrianov identity',
        'q-binomial identity',
        'mass formula',
        'special L-values',
        'degree-two period formula',
        'degree-one Rankin-Selberg series',
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--D', type=int, required=True)
        parser.add_argument('--primes', type=int_list, default=[2, 3, 5])
        parser.add_argument('--m', type=int_list, default=[1, 2])
        parser.add_argument('--order', type=int)
        parser.add_argument('--workers', type=int, default=1)
        parser.add_argument('--rankin-cutoff', type=int, default=10 ** 4,
                            help='det cutoff of the m = 1 Rankin check; 0 skips it')
        parser.add_argument('--allow-calibration', action=argparse.BooleanOptionalAction, default=True)

    def config_data(self, options):
        data = super().config_data(options)
        data.update({
            'primes': options['primes'],
            'm': options['m'],
            'workers': options['workers'],
            'rankin_cutoff': options['rankin_cutoff'],
            'allow_calibration': options['allow_calibration'],
        })
        return data

    def report_name(self, options):
        return f"suite_D{options['D']}_p{'-'.join(map(str, options['primes']))}_m{'-'.join(map(str, options['m']))}"

    def run(self, options):
        from periods_cli.runner import run_suite, validate_config

        return run_suite(validate_config(self.config_data(options)))
