from django.conf import settings

# Fallbacks when a setting is absent (e.g. library use without the project settings)
DEFAULTS = {
    'THREADS': 1,
    'CHUNK_SIZE': 1 << 16,
    'CONTEXT_TAGS': False,
    'TABLE_M': 16,
    'MAX_IMAGE_M': 10,
    'MAX_KERNEL_M': 9,
    'MAX_EXHAUSTIVE_M': 5,
    'MAX_H_CHECK_M': 5,
    'MAX_DIAG_M': 7,
    'MAX_EQUIV_M': 7,
    'MAX_GAMMA_M': 13,
    'EQUIV_BUDGET': 10_000_000,
    # 0: no cap on evaluations per check
    'SCAN_BUDGET': 0,
}


def budget(name, override=None):
    """
    Read an APNTRI_* setting.

    Args:
        name: setting name without the APNTRI_ prefix
        override: explicit value from the caller, wins when not None
    """
    if override is not None:
        return override
    return getattr(settings, f'APNTRI_{name}', DEFAULTS[name])


def check_budget(what, m, name, override=None):
    """Raise FieldTooLarge when m is above the named cap"""
    from .exceptions import FieldTooLarge

    limit = budget(name, override)
    if m > limit:
        raise FieldTooLarge(what, m, limit)
    return limit


def check_work(what, units, override=None):
    """
    Raise BudgetExceeded when a sweep of `units` evaluations is over the
    APNTRI_SCAN_BUDGET cap (or the caller's override). 0 disables the cap.
    """
    from .exceptions import BudgetExceeded

    limit = budget('SCAN_BUDGET', override)
    if limit and units > limit:
        raise BudgetExceeded(f'{what} needs {units} evaluations, budget is {limit}')
    return limit
