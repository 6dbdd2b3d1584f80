from django.contrib import admin
from .models import ClassificationJob

admin.site.register(ClassificationJob)
