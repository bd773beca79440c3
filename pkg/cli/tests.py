import csv
import io
import json
from pathlib import Path
from types import SimpleNamespace
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings, tag

from checkers.status import run_serial

from .config import EXIT_BUDGET, EXIT_USAGE
from .reports import correlation_percent
from .workers import make_runner

GOLDEN = Path(__file__).resolve().parent / 'golden'


def run(*args):
    """Run a management command, returning (stdout, stderr)"""
    out, err = io.StringIO(), io.StringIO()
    call_command(*args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class CommandTestCase(SimpleTestCase):

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as cm:
            run(*args)
        self.assertEqual(cm.exception.returncode, code)
        return cm.exception


class ScanCommandTests(CommandTestCase):

    def test_m3_family_g(self):
        out, err = run('scan', '--m', '3', '--i', '1', '--family', 'g')
        rows = csv_rows(out)
        self.assertEqual(len(rows), 7)
        self.assertTrue(all(r['is_perm'] == '1' and r['is_apn'] == '1' for r in rows))
        self.assertTrue(all(r['correlated'] == '1' for r in rows))
        self.assertEqual([r['a_hex'] for r in rows], [hex(a) for a in range(1, 8)])
        self.assertIn('correlation 7/7 (100%)', err)

    def test_m5_i2_permutation_count(self):
        out, _ = run('scan', '--m', '5', '--i', '2', '--family', 'g', '--method', 'image')
        rows = csv_rows(out)
        self.assertEqual(len(rows), 31)
        self.assertEqual(sum(r['is_perm'] == '1' for r in rows), 11)
        self.assertTrue(all(r['correlated'] == '1' for r in rows))

    def test_root_columns_agree(self):
        out, _ = run('scan', '--m', '5', '--i', '1', '--family', 'both', '--method', 'image')
        for row in csv_rows(out):
            roots = [int(row[name]) for name in row if name.startswith('roots_')]
            self.assertEqual(len({n > 0 for n in roots}), 1, row)

    def test_a_filter(self):
        out, _ = run('scan', '--m', '3', '--family', 'both', '--a', '0x1', '--a', '0x3')
        rows = csv_rows(out)
        self.assertEqual([(r['family'], r['a_hex']) for r in rows],
                         [('G', '0x1'), ('G', '0x3'), ('H', '0x1'), ('H', '0x3')])

    def test_json_output(self):
        out, _ = run('scan', '--m', '3', '--family', 'h', '--output', 'json')
        data = json.loads(out)
        self.assertEqual(data['total'], 7)
        self.assertEqual(data['correlation'], '100%')
        self.assertEqual(data['rows'][0]['a'], '0x1')
        self.assertEqual(set(data['rows'][0]['roots']), {'P', 'Pprime', 'Q', 'Qq', 'R', 'S'})
        self.assertEqual(data['field'], {'m': 3, 'i': 1, 'q': 2, 'd': 7, 'order': 7, 'modulus': '0xb'})

    def test_pretty_output(self):
        out, _ = run('scan', '--m', '3', '--a', '0x1', '--output', 'pretty')
        lines = out.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertIn('a_hex', lines[0])
        self.assertTrue(set(lines[1]) <= {'-', ' '})

    def test_even_m_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '4', '--i', '1')

    def test_gcd_violation_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '9', '--i', '3')

    def test_bad_parameter_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '3', '--a', '0x0')
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '3', '--a', '0x8')
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '3', '--a', 'zz')

    def test_bad_threads_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '3', '--threads', '0')
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '3', '--chunk-size', '-4')

    def test_reducible_modulus_is_usage_error(self):
        # x^3 + 1 = (x + 1)(x^2 + x + 1)
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '3', '--modulus', '0x9')

    @override_settings(APNTRI_MAX_KERNEL_M=2)
    def test_budget_exit_code(self):
        self.assertExitCode(EXIT_BUDGET, 'scan', '--m', '3', '--method', 'kernel')

    def test_budget_flag_caps_sweeps(self):
        # 2^9 inputs per image scan, 2^9 - 1 directions per kernel scan
        self.assertExitCode(EXIT_BUDGET, 'scan', '--m', '3', '--family', 'g', '--method', 'kernel', '--budget', '100')
        out, _ = run('scan', '--m', '3', '--family', 'g', '--method', 'kernel', '--budget', '512')
        self.assertEqual(len(csv_rows(out)), 7)

    def test_budget_flag_skips_criterion(self):
        out, err = run('scan', '--m', '3', '--family', 'g', '--method', 'criterion', '--budget', '1')
        self.assertEqual(len(csv_rows(out)), 7)
        self.assertIn('correlation 7/7 (100%)', err)

    @override_settings(APNTRI_SCAN_BUDGET=100)
    def test_budget_setting(self):
        self.assertExitCode(EXIT_BUDGET, 'scan', '--m', '3', '--a', '0x1', '--method', 'kernel')

    def test_bad_budget_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'scan', '--m', '3', '--budget', '0')

    def test_output_independent_of_threads(self):
        args = ('scan', '--m', '3', '--family', 'both', '--method', 'kernel')
        serial, _ = run(*args, '--threads', '1')
        with mock.patch('cli.workers.settings', SimpleNamespace(CELERY_TASK_ALWAYS_EAGER=False)):
            chunked, _ = run(*args, '--threads', '3', '--chunk-size', '50')
            wide, _ = run(*args, '--threads', '8', '--chunk-size', '7')
        self.assertEqual(serial, chunked)
        self.assertEqual(serial, wide)

    @tag('slow')
    def test_m5_kernel_method(self):
        out, err = run('scan', '--m', '5', '--i', '1', '--family', 'g', '--method', 'kernel')
        rows = csv_rows(out)
        self.assertEqual(sum(r['is_apn'] == '1' for r in rows), 11)
        self.assertIn('correlation 31/31 (100%)', err)


class WorkerTests(SimpleTestCase):

    def test_single_thread_is_serial(self):
        self.assertIs(make_runner(1), run_serial)

    def test_eager_is_serial(self):
        self.assertIs(make_runner(4), run_serial)

    def test_correlation_percent(self):
        self.assertEqual(correlation_percent(7, 7), '100%')
        self.assertEqual(correlation_percent(30, 31), '96%')
        self.assertEqual(correlation_percent(0, 0), '100%')


class Table1CommandTests(CommandTestCase):

    def test_matches_golden(self):
        out, _ = run('table1', '--check')
        self.assertEqual(out, (GOLDEN / 'table1.csv').read_text())

    def test_single_row(self):
        out, _ = run('table1', '--m', '7', '--i', '2')
        self.assertEqual(csv_rows(out), [{
            'm': '7', 'i': '2', 'q': '4', 'group_order': '127', 'good_count': '35', 'a1_good': 'no',
        }])

    def test_single_row_check(self):
        run('table1', '--m', '9', '--i', '1', '--check')

    def test_row_outside_theorem_mode(self):
        self.assertExitCode(EXIT_USAGE, 'table1', '--m', '6', '--i', '1')

    def test_budget_flag(self):
        # 31 root scans of 31 points each
        self.assertExitCode(EXIT_BUDGET, 'table1', '--m', '5', '--i', '1', '--budget', '900')
        out, _ = run('table1', '--m', '5', '--i', '1', '--budget', '961')
        self.assertEqual(csv_rows(out)[0]['good_count'], '11')


class Table2CommandTests(CommandTestCase):

    def test_m3_family_g(self):
        out, _ = run('table2', '--m', '3', '--i', '2', '--check')
        self.assertEqual(csv_rows(out)[0]['permutations'], '7/7')
        self.assertEqual(csv_rows(out)[0]['correlation'], '100%')

    def test_m3_family_h(self):
        out, _ = run('table2', '--m', '3', '--i', '1', '--family', 'h', '--check')
        self.assertEqual(csv_rows(out)[0]['correlation'], '100%')

    def test_m5_by_image_scan(self):
        out, _ = run('table2', '--m', '5', '--i', '1', '--method', 'image', '--check')
        self.assertEqual(csv_rows(out)[0]['permutations'], '11/31')

    def test_budget_flag(self):
        self.assertExitCode(EXIT_BUDGET, 'table2', '--m', '3', '--i', '1', '--budget', '100')

    @tag('slow')
    def test_matches_golden(self):
        out, _ = run('table2', '--check')
        self.assertEqual(out, (GOLDEN / 'table2.csv').read_text())

    @tag('slow')
    def test_matches_golden_family_h(self):
        out, _ = run('table2', '--family', 'h', '--check')
        self.assertEqual(out, (GOLDEN / 'table2_h.csv').read_text())


class CurveCommandTests(CommandTestCase):

    def test_m5_partition(self):
        out, _ = run('curve', '--m', '5', '--i', '1')
        row = csv_rows(out)[0]
        self.assertEqual(row['partition_ok'], '1')
        self.assertEqual(row['c0'], '11')
        self.assertEqual(row['collision_pairs'], '')

    def test_m11_bound(self):
        out, _ = run('curve', '--m', '11', '--i', '1')
        row = csv_rows(out)[0]
        self.assertEqual(row['c0'], '595')
        self.assertEqual(row['lower_bound'], '97.765')
        self.assertEqual(row['bound_ceiling'], '98')

    def test_direct_counts(self):
        out, _ = run('curve', '--m', '7', '--i', '1', '--direct')
        row = csv_rows(out)[0]
        self.assertEqual(row['counts_agree'], '1')
        self.assertEqual(row['gamma_diagonal'], '0')
        self.assertEqual(row['gamma_affine'], row['collision_pairs'])

    def test_json_output(self):
        out, _ = run('curve', '--m', '3', '--output', 'json')
        data = json.loads(out)
        self.assertEqual(sum(data['class_counts'].values()), 8)
        self.assertEqual(data['c0'], 7)

    def test_even_m_allowed(self):
        out, _ = run('curve', '--m', '6', '--i', '1')
        self.assertEqual(csv_rows(out)[0]['partition_ok'], '1')

    @override_settings(APNTRI_MAX_GAMMA_M=5)
    def test_direct_budget(self):
        self.assertExitCode(EXIT_BUDGET, 'curve', '--m', '7', '--direct')


class MatrixCommandTests(CommandTestCase):

    def test_m21_a1_singular(self):
        out, _ = run('matrix', '--m', '21', '--i', '1', '--a', '0x1')
        row = csv_rows(out)[0]
        self.assertEqual(row['singular'], '1')
        self.assertEqual(row['agree'], '1')
        self.assertGreater(int(row['kernel_dim']), 0)

    def test_m9_a1_regular(self):
        out, _ = run('matrix', '--m', '9', '--i', '1', '--a', '0x1')
        row = csv_rows(out)[0]
        self.assertEqual((row['singular'], row['kernel_dim'], row['q_roots']), ('0', '0', '0'))

    def test_every_parameter_agrees(self):
        for m in (3, 5, 7):
            out, _ = run('matrix', '--m', str(m), '--i', '1')
            rows = csv_rows(out)
            self.assertEqual(len(rows), (1 << m) - 1)
            self.assertTrue(all(r['agree'] == '1' for r in rows))

    def test_json_output(self):
        out, _ = run('matrix', '--m', '7', '--a', '0x1', '--output', 'json')
        data = json.loads(out)
        self.assertEqual(data[0]['a'], '0x1')
        self.assertTrue(data[0]['singular'])
        self.assertEqual(data[0]['q_roots'], 7)

    def test_full_scan_is_budgeted(self):
        self.assertExitCode(EXIT_BUDGET, 'matrix', '--m', '11', '--i', '1')


class EquivCommandTests(CommandTestCase):

    def test_diag_a1(self):
        out, _ = run('equiv', 'diag', '--m', '3', '--i', '1', '--a', '0x1', '--family', 'g')
        data = json.loads(out)
        self.assertTrue(data['criterion'])
        self.assertTrue(data['agree'])
        self.assertIsNotNone(data['witness'])
        self.assertIsNotNone(data['recipe'])
        self.assertEqual(data['d0'], 7)

    def test_diag_without_witness(self):
        out, _ = run('equiv', 'diag', '--m', '5', '--a', '0x2', '--family', 'h', '--output', 'csv')
        row = csv_rows(out)[0]
        self.assertEqual((row['criterion'], row['found'], row['agree']), ('0', '0', '1'))
        self.assertEqual(row['d0'], '1')

    def test_diag_d0(self):
        out, _ = run(
            'equiv', 'diag', '--m', '9', '--i', '3', '--a', '0x1', '--recipe-only', '--output', 'csv',
        )
        row = csv_rows(out)[0]
        self.assertEqual((row['d0'], row['criterion'], row['recipe_ok']), ('73', '1', '1'))

    def test_cross_identity(self):
        out, _ = run('equiv', 'cross', '--m', '3', '--a', '0x1', '--b', '0x1', '--pair', 'gg')
        data = json.loads(out)
        self.assertEqual(data['result'], 'equivalent')
        self.assertEqual(data['inner']['perm'], [0, 1, 2])
        self.assertEqual(len(data['footnotes']), 3)

    def test_cross_budget(self):
        out = io.StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('equiv', 'cross', '--m', '3', '--a', '0x1', '--b', '0x1', '--pair', 'gg',
                         '--budget', '10', stdout=out, stderr=io.StringIO())
        self.assertEqual(cm.exception.returncode, EXIT_BUDGET)
        self.assertEqual(json.loads(out.getvalue())['result'], 'budget_exceeded')

    def test_cross_field_too_large(self):
        self.assertExitCode(
            EXIT_BUDGET, 'equiv', 'cross', '--m', '9', '--a', '0x1', '--b', '0x1',
        )

    def test_zero_parameter(self):
        self.assertExitCode(EXIT_USAGE, 'equiv', 'diag', '--m', '3', '--a', '0x0')

    @tag('slow')
    def test_cross_family_m5(self):
        out, _ = run('equiv', 'cross', '--m', '5', '--i', '1', '--a', '0x1', '--b', '0x1')
        data = json.loads(out)
        self.assertEqual(data['result'], 'inequivalent')
        self.assertEqual(data['scope'], 'CCZ via monomial restriction')


class ClassifyCommandTests(CommandTestCase):

    def test_m3_a1_tallies(self):
        out, _ = run('classify', '--m', '3', '--i', '1', '--a', '0x1')
        rows = {r['direction_type']: r for r in csv_rows(out)}
        self.assertEqual(set(rows), {'Axis', 'Type1', 'Type2a', 'Type2b', 'Type3'})
        self.assertEqual(sum(int(r['total']) for r in rows.values()), 511)
        self.assertEqual(rows['Axis']['total'], '21')
        self.assertEqual(rows['Type3']['total'], '343')
        self.assertTrue(all(r['mismatches'] == '0' and r['bound_missed'] == '0' for r in rows.values()))

    def test_every_parameter_m3(self):
        out, _ = run('classify', '--m', '3', '--i', '2')
        rows = csv_rows(out)
        self.assertEqual({r['a_hex'] for r in rows}, {hex(a) for a in range(1, 8)})

    def test_json_output(self):
        out, _ = run('classify', '--m', '3', '--a', '0x3', '--output', 'json')
        data = json.loads(out)
        self.assertEqual(data['field']['modulus'], '0xb')
        self.assertEqual(data['field']['d'], 7)
        summary = data['summaries'][0]
        self.assertEqual(summary['a'], '0x3')
        self.assertTrue(summary['consistent'])
        self.assertIsNone(summary['first_mismatch'])
        self.assertEqual(summary['tallies']['Type3']['total'], 343)

    @tag('slow')
    def test_bad_parameter_m5(self):
        out, _ = run('classify', '--m', '5', '--i', '1', '--output', 'json')
        data = json.loads(out)
        self.assertEqual(len(data['summaries']), 31)
        self.assertTrue(all(s['consistent'] for s in data['summaries']))

    def test_even_m_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'classify', '--m', '4', '--a', '0x1')

    def test_field_too_large(self):
        self.assertExitCode(EXIT_BUDGET, 'classify', '--m', '11', '--a', '0x1')
