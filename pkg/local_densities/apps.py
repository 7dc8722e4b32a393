from django.apps import AppConfig


class LocalDensitiesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'local_densities'
    verbose_name = 'Local densities'
