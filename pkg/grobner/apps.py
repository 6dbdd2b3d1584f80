from django.apps import AppConfig


class GrobnerConfig(AppConfig):
    name = 'grobner'
