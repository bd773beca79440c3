import logging

from django.core.management.base import BaseCommand, CommandError

from gf2m.exceptions import ApntriError, BudgetExceeded, FieldTooLarge

from .config import EXIT_BUDGET, EXIT_MISMATCH, EXIT_USAGE
from .renderers import render

logger = logging.getLogger(__name__)


class ApntriCommand(BaseCommand):
    """
    Base for the toolkit commands.

    Subclasses implement run(**options). Toolkit errors become CommandError
    with the exit code of their kind: budget 3, anything else the caller
    got wrong 2. Mathematical mismatches are raised through mismatch().
    """
    requires_system_checks = []

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except (FieldTooLarge, BudgetExceeded) as e:
            raise CommandError(str(e), returncode=EXIT_BUDGET)
        except ApntriError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)

    def run(self, **options):
        raise NotImplementedError

    def emit(self, output, rows=None, fieldnames=None, data=None):
        self.stdout.write(render(output, rows=rows, fieldnames=fieldnames, data=data), ending='')

    def progress(self, message):
        logger.info(message)

    def mismatch(self, message):
        raise CommandError(message, returncode=EXIT_MISMATCH)
