from django.apps import AppConfig


class ExactAlgebraConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'exact_algebra'
    verbose_name = 'Exact algebra'
