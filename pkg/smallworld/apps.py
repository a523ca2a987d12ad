from django.apps import AppConfig


class SmallworldConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'smallworld'
    verbose_name = 'Small-world omega'
