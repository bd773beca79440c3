from django.apps import AppConfig


class EquivalenceConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'equivalence'
