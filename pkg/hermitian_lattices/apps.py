from django.apps import AppConfig


class HermitianLatticesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hermitian_lattices'
    verbose_name = 'Hermitian lattices'
