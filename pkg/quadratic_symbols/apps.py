from django.apps import AppConfig


class QuadraticSymbolsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'quadratic_symbols'
    verbose_name = 'Quadratic symbols'
