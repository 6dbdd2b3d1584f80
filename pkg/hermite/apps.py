from django.apps import AppConfig


class HermiteConfig(AppConfig):
    name = 'hermite'
