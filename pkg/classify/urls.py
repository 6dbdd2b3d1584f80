from django.urls import path
from .views import ClassifyView, ClassificationJobCreateView, ClassificationJobDetailView

app_name = 'classify'

urlpatterns = [
    # Synchronous classification
    path('', ClassifyView.as_view(), name='classify'),

    # Background jobs
    path('jobs/', ClassificationJobCreateView.as_view(), name='create-job'),
    path('jobs/<uuid:id>/', ClassificationJobDetailView.as_view(), name='job-detail'),
]
