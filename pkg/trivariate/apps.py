from django.apps import AppConfig


class TrivariateConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'trivariate'
