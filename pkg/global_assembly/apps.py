from django.apps import AppConfig


class GlobalAssemblyConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'global_assembly'
    verbose_name = 'Global assembly'
