"""
URL configuration for the real_roots project.

    /api/token/           JWT pair for API clients
    /api/classify/        synchronous classification and background jobs
"""
from django.contrib import admin
from django.urls import path, include
from rest_framework_simplejwt.views import TokenObtainPairView, TokenRefreshView

urlpatterns = [
    path('admin/', admin.site.urls),
    path('api/token/', TokenObtainPairView.as_view(), name='token-obtain-pair'),
    path('api/token/refresh/', TokenRefreshView.as_view(), name='token-refresh'),
    path('api/classify/', include('classify.urls')),
]
