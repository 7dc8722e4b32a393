from django.apps import AppConfig


class SeriesIdentitiesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'series_identities'
    verbose_name = 'Series identities'
