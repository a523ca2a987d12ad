from django.apps import AppConfig


class DegreedistConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'degreedist'
    verbose_name = 'Degree distribution'
