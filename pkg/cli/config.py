"""
Run configuration shared by the management commands.

Options are validated here, before any computation, and a rejected
configuration raises CommandError with the usage exit code.
"""
from dataclasses import dataclass
from typing import Optional

from django.core.management.base import CommandError

from checkers.status import METHODS
from gf2m.conf import budget
from gf2m.field import ctx_new

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

OUTPUTS = ('csv', 'json', 'pretty')
FAMILY_CHOICES = ('g', 'h', 'both')


def parse_hex(text):
    try:
        return int(text, 16)
    except (TypeError, ValueError):
        raise CommandError(f'{text!r} is not a hex value', returncode=EXIT_USAGE)


# ============ ARGUMENTS ============

def add_field_arguments(parser, m_required=True):
    parser.add_argument('--m', type=int, required=m_required, help='extension degree')
    parser.add_argument('--i', type=int, default=1, help='Frobenius exponent, q = 2^i')
    parser.add_argument('--modulus', default=None, help='irreducible modulus as hex (default: smallest)')


def add_output_arguments(parser, default='csv'):
    parser.add_argument('--output', choices=OUTPUTS, default=default)


def add_budget_argument(parser, help_text='evaluations one check may run per form (default: APNTRI_SCAN_BUDGET)'):
    parser.add_argument('--budget', type=int, default=None, help=help_text)


def add_run_arguments(parser, family_default='g', method_default='auto'):
    parser.add_argument('--family', choices=FAMILY_CHOICES, default=family_default)
    parser.add_argument('--a', action='append', default=None, help='parameter as hex; repeatable')
    parser.add_argument('--method', choices=METHODS, default=method_default)
    parser.add_argument(
        '--threads', type=int, default=None,
        help='Celery workers to keep busy (default: APNTRI_THREADS)',
    )
    parser.add_argument('--chunk-size', type=int, default=None, dest='chunk_size')
    add_budget_argument(parser)


# ============ RUN CONFIG ============

@dataclass
class RunConfig:
    m: int
    i: int
    family: str = 'both'
    a_filter: Optional[tuple] = None
    method: str = 'auto'
    output: str = 'csv'
    threads: int = 1
    budget: Optional[int] = None
    modulus: Optional[int] = None
    chunk_size: Optional[int] = None
    theorem_mode: bool = True

    @classmethod
    def from_options(cls, options, theorem_mode=True):
        """
        Build and validate a RunConfig from parsed command options.

        Args:
            options: the options dict handed to BaseCommand.handle
            theorem_mode: require odd m and gcd(i, m) = 1

        Returns:
            RunConfig
        """
        threads = options.get('threads')
        if threads is None:
            threads = budget('THREADS')
        if threads < 1:
            raise CommandError(f'--threads must be at least 1, got {threads}', returncode=EXIT_USAGE)

        chunk_size = options.get('chunk_size')
        if chunk_size is not None and chunk_size < 1:
            raise CommandError(f'--chunk-size must be positive, got {chunk_size}', returncode=EXIT_USAGE)

        limit = options.get('budget')
        if limit is not None and limit < 1:
            raise CommandError(f'--budget must be positive, got {limit}', returncode=EXIT_USAGE)

        modulus = options.get('modulus')
        cfg = cls(
            m=options['m'],
            i=options.get('i') or 1,
            family=(options.get('family') or 'both').lower(),
            method=options.get('method') or 'auto',
            output=options.get('output') or 'csv',
            threads=threads,
            budget=limit,
            modulus=parse_hex(modulus) if modulus else None,
            chunk_size=chunk_size,
            theorem_mode=theorem_mode,
        )
        # build the context now so bad (m, i, modulus) fail before any work
        ctx = cfg.ctx
        if options.get('a'):
            cfg.a_filter = tuple(sorted({ctx.from_hex(text) for text in options['a']}))
            if 0 in cfg.a_filter:
                raise CommandError('the parameter a must be nonzero', returncode=EXIT_USAGE)
        return cfg

    @property
    def ctx(self):
        return ctx_new(self.m, self.i, modulus_override=self.modulus, theorem_mode=self.theorem_mode)

    @property
    def families(self):
        if self.family == 'both':
            return ['G', 'H']
        return [self.family.upper()]

    def parameters(self):
        """Parameters to scan, in element order"""
        if self.a_filter:
            return list(self.a_filter)
        return list(self.ctx.nonzero())
