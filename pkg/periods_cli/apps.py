from django.apps import AppConfig
from django.conf import settings


class PeriodsCliConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'periods_cli'
    verbose_name = 'Period computations CLI'

    def ready(self):
        """Make sure the report directory exists before any command writes to it."""
        settings.LATTICE_SETTINGS['REPORT_DIR'].mkdir(parents=True, exist_ok=True)
