import csv
from pathlib import Path

from cli.base import ApntriCommand
from cli.config import RunConfig, add_budget_argument, add_output_arguments
from cli.reports import TABLE1_FIELDS, TABLE1_ROWS, table1_row

GOLDEN = Path(__file__).resolve().parents[2] / 'golden' / 'table1.csv'


def golden_rows(path, fields):
    """Golden CSV rows keyed by (m, i), values as strings"""
    with open(path, newline='') as handle:
        return {
            (row['m'], row['i']): {name: row[name] for name in fields}
            for row in csv.DictReader(handle)
        }


def diff_against_golden(rows, path, fields):
    """Rows that differ from (or are missing in) the golden file"""
    golden = golden_rows(path, fields)
    differences = []
    for row in rows:
        produced = {name: str(row[name]) for name in fields}
        expected = golden.get((produced['m'], produced['i']))
        if produced != expected:
            differences.append((produced, expected))
    return differences


class Command(ApntriCommand):
    help = 'Number of good parameters a per (m, i), with the a = 1 column'

    def add_arguments(self, parser):
        parser.add_argument('--m', type=int, default=None, help='single row (default: the whole table)')
        parser.add_argument('--i', type=int, default=1)
        parser.add_argument('--check', action='store_true', help='diff against the golden table')
        add_budget_argument(parser, help_text='root evaluations per row at most (default: APNTRI_SCAN_BUDGET)')
        add_output_arguments(parser)

    def run(self, **options):
        pairs = [(options['m'], options['i'])] if options['m'] else TABLE1_ROWS
        cfg = RunConfig.from_options({**options, 'm': pairs[0][0], 'i': pairs[0][1]})

        rows = []
        for m, i in pairs:
            self.progress(f'table1 m={m} i={i}')
            row, methods_agree = table1_row(m, i, max_units=cfg.budget)
            if not methods_agree:
                self.mismatch(f'root scan and g-image good sets differ at m={m} i={i}')
            rows.append(row)

        self.emit(cfg.output, rows=rows, fieldnames=TABLE1_FIELDS)

        if options['check']:
            differences = diff_against_golden(rows, GOLDEN, TABLE1_FIELDS)
            if differences:
                produced, expected = differences[0]
                self.mismatch(f'table1 differs from golden: got {produced}, expected {expected}')
