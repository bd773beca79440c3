from pathlib import Path

from cli.base import ApntriCommand
from cli.config import RunConfig, add_output_arguments, add_run_arguments
from cli.reports import TABLE2_FIELDS, TABLE2_ROWS, table2_row
from cli.workers import make_runner

from .table1 import diff_against_golden

GOLDEN_DIR = Path(__file__).resolve().parents[2] / 'golden'
GOLDEN = {'G': GOLDEN_DIR / 'table2.csv', 'H': GOLDEN_DIR / 'table2_h.csv'}


class Command(ApntriCommand):
    help = 'Permutation counts and root/permutation/APN correlation per (m, i)'

    def add_arguments(self, parser):
        parser.add_argument('--m', type=int, default=None, help='single row (default: the whole table)')
        parser.add_argument('--i', type=int, default=1)
        parser.add_argument('--check', action='store_true', help='diff against the golden table')
        add_run_arguments(parser, method_default='kernel')
        add_output_arguments(parser)

    def run(self, **options):
        if options['family'] == 'both':
            families = ['G', 'H']
        else:
            families = [options['family'].upper()]
        pairs = [(options['m'], options['i'])] if options['m'] else TABLE2_ROWS
        # validates threads, chunk size and budget
        cfg = RunConfig.from_options({**options, 'm': pairs[0][0], 'i': pairs[0][1]})
        runner = make_runner(cfg.threads)

        for family in families:
            rows = []
            for m, i in pairs:
                self.progress(f'table2 {family} m={m} i={i}')
                row, mismatches = table2_row(
                    m, i, family=family, method=cfg.method, runner=runner,
                    chunk_size=cfg.chunk_size, max_units=cfg.budget,
                )
                if mismatches:
                    r = mismatches[0]
                    self.mismatch(
                        f'{family}_{hex(r.a)} at m={m} i={i}: criterion_good={r.criterion_good} '
                        f'is_perm={r.is_permutation} is_apn={r.is_apn}'
                    )
                rows.append(row)

            self.emit(cfg.output, rows=rows, fieldnames=TABLE2_FIELDS)

            if options['check']:
                differences = diff_against_golden(rows, GOLDEN[family], TABLE2_FIELDS)
                if differences:
                    produced, expected = differences[0]
                    self.mismatch(f'table2 ({family}) differs from golden: got {produced}, expected {expected}')
