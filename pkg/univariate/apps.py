from django.apps import AppConfig


class UnivariateConfig(AppConfig):
    name = 'univariate'
