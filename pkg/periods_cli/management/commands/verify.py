import argparse

from series_identities.serializers import FAMILY_CHOICES

from periods_cli.commands import PeriodsCommand


class Command(PeriodsCommand):
    help = 'Check one family of closed-form series against its independent oracle'
    command = 'verify'
    formulas = ('closed-form series against class sums',)

    def add_command_arguments(self, parser):
        parser.add_argument('--family', choices=FAMILY_CHOICES, required=True)
        parser.add_argument('--m', type=int, required=True)
        parser.add_argument('--p', type=int, required=True)
        parser.add_argument('--D', type=int, required=True)
        parser.add_argument('--order', type=int)
        parser.add_argument('--d0', type=int, default=1)
        parser.add_argument('--literal', action='store_true', help='Use the displays exactly as stated')
        parser.add_argument('--allow-calibration', action=argparse.BooleanOptionalAction, default=True)

    def report_name(self, options):
        name = super().report_name(options)
        return f"{name}_literal" if options['literal'] else name

    def run(self, options):
        from series_identities.services import VerificationService

        data = {key: options[key] for key in ('family', 'm', 'p', 'D', 'd0', 'literal', 'allow_calibration')}
        if options['order'] is not None:
            data['order'] = options['order']
        reports, accepted = VerificationService.run(data)
        return {'reports': reports}, accepted
