from django.apps import AppConfig


class Gf2mConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gf2m'
