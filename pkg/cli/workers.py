import logging

from celery import group
from django.conf import settings

from checkers.status import run_serial
from checkers.tasks import scan_kernel_chunk

logger = logging.getLogger(__name__)


def make_runner(threads):
    """
    Chunk runner for checkers.status.scan_kernels.

    One thread (or eager Celery) runs chunks in this process. Otherwise
    chunks go out as Celery groups of `threads` tasks, wave by wave, and
    dispatch stops after the first wave that holds a violation.
    """
    if threads <= 1 or settings.CELERY_TASK_ALWAYS_EAGER:
        return run_serial

    def run_celery(f, chunks):
        payload = f.to_payload()
        results = []
        for start in range(0, len(chunks), threads):
            wave = chunks[start:start + threads]
            job = group(scan_kernel_chunk.s(payload, lo, hi) for lo, hi in wave)
            wave_results = job.apply_async().get()
            results.extend(wave_results)
            logger.debug(f'{f!r}: {start + len(wave)}/{len(chunks)} chunks done')
            if any(r['witness'] is not None for r in wave_results):
                break
        return results

    return run_celery
