from django.apps import AppConfig


class RewireConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'rewire'
    verbose_name = 'Degree-preserving rewiring'
