"""Background classification jobs using Celery."""

import logging
from celery import shared_task

from real_roots.exceptions import RealRootsError

logger = logging.getLogger(__name__)


@shared_task
def run_classification_job(job_id):
    """
    Run a stored classification job and record its result.

    Args:
        job_id: UUID of the ClassificationJob
    """
    from classify.models import ClassificationJob
    from cli.utils import classify_text

    try:
        job = ClassificationJob.objects.get(id=job_id)
    except ClassificationJob.DoesNotExist:
        logger.error(f"ClassificationJob {job_id} not found")
        return False

    job.mark_running()
    options = {'seed': job.seed, 'fast_mode': job.fast_mode, 'x_order': job.x_order}
    options = {name: value for name, value in options.items() if value is not None}
    try:
        payload = classify_text(job.system, job.mode, **options)
    except RealRootsError as e:
        logger.error(f"ClassificationJob {job_id} failed: {type(e).__name__}: {e}")
        job.mark_failed(f"{type(e).__name__}: {e}", e.exit_code)
        return False

    job.mark_succeeded(payload)
    logger.info(f"ClassificationJob {job_id} succeeded ({job.mode})")
    return True
