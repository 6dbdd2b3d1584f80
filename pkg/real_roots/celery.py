"""Celery application for background classification jobs."""

import os
from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'real_roots.settings')

app = Celery('real_roots')
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks()
