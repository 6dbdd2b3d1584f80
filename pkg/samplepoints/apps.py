from django.apps import AppConfig


class SamplepointsConfig(AppConfig):
    name = 'samplepoints'
