import logging

from celery import shared_task

from trivariate.quadform import QuadForm3

from .status import kernel_chunk

logger = logging.getLogger(__name__)


@shared_task
def scan_kernel_chunk(payload, lo, hi):
    """
    Kernel sizes for packed directions lo .. hi - 1 of one form

    Args:
        payload: QuadForm3.to_payload() of the form under test
        lo, hi: direction range

    Returns:
        kernel_chunk result dict (JSON-safe)
    """
    f = QuadForm3.from_payload(payload)
    result = kernel_chunk(f, lo, hi)
    if result['witness'] is not None:
        logger.debug(f'{f!r}: kernel {result["max_kernel"]} in chunk [{lo}, {hi})')
    return result
