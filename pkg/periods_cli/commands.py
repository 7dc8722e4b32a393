import argparse
import logging

from django.core.management.base import BaseCommand, CommandError

from hermitian_periods.exceptions import (
    BudgetExceeded, FormDataError, HermitianPeriodsError, InvalidInput, VerificationFailure,
)

from .runner import budget_override, dumps, validate_config, write_report

logger = logging.getLogger('periods_cli')

EXIT_VERIFICATION = 1
EXIT_BUDGET = 2
EXIT_IO = 3


def int_list(value):
    """'2,3,5' -> [2, 3, 5]"""
    try:
        return [int(part) for part in value.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {value!r}")


class PeriodsCommand(BaseCommand):
    """
    Shared handling for the computation commands: budget override, the
    RunConfig check, sorted-key JSON reports and exit statuses
    (1 failed checks, 2 budget, 3 input/output).
    """
    command = None
    # descriptive names of the formulas a report exercises
    formulas = ()

    def add_arguments(self, parser):
        self.add_command_arguments(parser)
        parser.add_argument('--budget', type=int, help='Override the enumeration budget for this run')
        parser.add_argument('--output', help='Write the report here instead of the report directory')
        parser.add_argument('--quiet', action='store_true', help='Only write the report file')

    def add_command_arguments(self, parser):
        pass

    def config_data(self, options):
        """Fields of the run configuration this command fills in"""
        data = {'command': self.command}
        for key in ('D', 'order', 'budget', 'output'):
            if options.get(key) is not None:
                data[key] = options[key]
        return data

    def report_name(self, options):
        parts = [self.command]
        for key in ('family', 'kind', 'D', 'p', 'm', 'i'):
            if options.get(key) is not None:
                parts.append(f"{key}{options[key]}")
        return '_'.join(parts)

    def run(self, options):
        """Returns (payload, passed)"""
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            config = validate_config(self.config_data(options))
            with budget_override(config.get('budget')):
                payload, passed = self.run(options)
            payload = {'command': self.command, 'formulas': list(self.formulas), 'passed': passed, 'result': payload}
            path = write_report(self.report_name(options), payload, config.get('output'))
        except BudgetExceeded as exc:
            logger.error(f"{self.command}: {exc}")
            raise CommandError(f"Budget exhausted: {exc}", returncode=EXIT_BUDGET)
        except VerificationFailure as exc:
            logger.error(f"{self.command}: {exc}")
            raise CommandError(str(exc), returncode=EXIT_VERIFICATION)
        except (OSError, FormDataError, InvalidInput) as exc:
            logger.error(f"{self.command}: {exc}")
            raise CommandError(f"Input/output error: {exc}", returncode=EXIT_IO)
        except HermitianPeriodsError as exc:
            logger.error(f"{self.command}: {exc}")
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=EXIT_VERIFICATION)

        if not options.get('quiet'):
            self.stdout.write(dumps(payload))
        if not passed:
            self.stderr.write(self.style.WARNING(f"{self.command}: checks failed, report at {path}"))
            raise CommandError(f"{self.command} checks failed", returncode=EXIT_VERIFICATION)
        self.stderr.write(self.style.SUCCESS(f"{self.command}: report written to {path}"))
