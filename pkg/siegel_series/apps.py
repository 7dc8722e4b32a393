from django.apps import AppConfig


class SiegelSeriesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'siegel_series'
    verbose_name = 'Siegel series'
