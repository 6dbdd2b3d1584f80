import hashlib
import json
import logging

from django.conf import settings
from django.core.cache import cache
from rest_framework import generics, permissions, status
from rest_framework.response import Response

from arith.exceptions import ContextError, ContextMismatch, ParseError
from grobner.exceptions import InvalidSystem
from real_roots.exceptions import RealRootsError
from .exceptions import UnknownMode
from .models import ClassificationJob
from .serializers import (
    ClassificationJobCreateSerializer,
    ClassificationJobSerializer,
    ClassifyRequestSerializer,
)
from .tasks import run_classification_job

logger = logging.getLogger(__name__)

INPUT_ERRORS = (ParseError, ContextError, ContextMismatch, InvalidSystem, UnknownMode)


def cache_key(data):
    digest = hashlib.sha256(json.dumps(data, sort_keys=True, default=str).encode()).hexdigest()
    return f"rrc:classify:{digest}"


def error_response(error):
    """400 for malformed input, 422 when the mathematics fails."""
    code = status.HTTP_400_BAD_REQUEST if isinstance(error, INPUT_ERRORS) else status.HTTP_422_UNPROCESSABLE_ENTITY
    return Response(
        {
            'success': False,
            'message': str(error),
            'error': type(error).__name__,
        },
        status=code
    )


class ClassifyView(generics.GenericAPIView):
    """
    Classify a parametric system and wait for the result.

    POST /api/classify/ - Authenticated users

    Identical requests are answered from the cache for
    RRC_RESULT_CACHE_TIMEOUT seconds.
    """

    serializer_class = ClassifyRequestSerializer
    permission_classes = [permissions.IsAuthenticated]

    def post(self, request, *args, **kwargs):
        from cli.utils import classify_text

        serializer = self.get_serializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        key = cache_key(data)

        payload = cache.get(key)
        if payload is not None:
            return Response(
                {
                    'success': True,
                    'message': 'Classification retrieved from cache',
                    'data': payload
                },
                status=status.HTTP_200_OK
            )

        try:
            payload = classify_text(data['system'], data['mode'], **serializer.options())
        except RealRootsError as e:
            logger.error(f"Classification failed: {type(e).__name__}: {e}")
            return error_response(e)

        cache.set(key, payload, getattr(settings, 'RRC_RESULT_CACHE_TIMEOUT', 3600))
        return Response(
            {
                'success': True,
                'message': 'Classification completed',
                'data': payload
            },
            status=status.HTTP_200_OK
        )


class ClassificationJobCreateView(generics.CreateAPIView):
    """
    Queue a classification job.

    POST /api/classify/jobs/ - Authenticated users

    The job runs in a Celery worker; poll its detail endpoint for the result.
    """

    serializer_class = ClassificationJobCreateSerializer
    permission_classes = [permissions.IsAuthenticated]

    def create(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        job = serializer.save()

        run_classification_job.delay(str(job.id))
        logger.info(f"Queued ClassificationJob {job.id} ({job.mode})")

        return Response(
            {
                'success': True,
                'message': 'Classification job queued',
                'data': ClassificationJobSerializer(job).data
            },
            status=status.HTTP_202_ACCEPTED
        )


class ClassificationJobDetailView(generics.RetrieveAPIView):
    """
    Status and result of a classification job.

    GET /api/classify/jobs/{id}/ - Owner only
    """

    serializer_class = ClassificationJobSerializer
    permission_classes = [permissions.IsAuthenticated]
    lookup_field = 'id'

    def get_queryset(self):
        """Return only the jobs of the authenticated user."""
        return ClassificationJob.objects.filter(owner=self.request.user)

    def retrieve(self, request, *args, **kwargs):
        instance = self.get_object()
        serializer = self.get_serializer(instance)

        return Response(
            {
                'success': True,
                'message': 'Classification job retrieved successfully',
                'data': serializer.data
            },
            status=status.HTTP_200_OK
        )
