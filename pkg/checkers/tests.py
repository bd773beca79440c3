import numpy as np
from django.test import SimpleTestCase, override_settings, tag

from gf2m.exceptions import BudgetExceeded, FieldTooLarge
from gf2m.field import ctx_new
from trivariate.differential import kernel_sizes
from trivariate.quadform import make_G, make_H
from univariate.polys import PolyVariant, roots_in_field

from .serializers import StatusReportSerializer, status_csv_row
from .status import (
    first_collision,
    is_apn_exhaustive,
    is_apn_kernel,
    is_permutation,
    kernel_chunk,
    merge_chunks,
    scan_kernels,
    solution_counts_are_affine,
    status,
)
from .tasks import scan_kernel_chunk


def root_free(ctx, variant, a):
    return roots_in_field(ctx, variant, a).count == 0


class PermutationTests(SimpleTestCase):

    def test_m3_all_permutations(self):
        for i in (1, 2):
            ctx = ctx_new(3, i)
            for a in ctx.nonzero():
                self.assertTrue(is_permutation(make_G(ctx, a)))

    def test_m5_g_counts(self):
        for i in (1, 2):
            ctx = ctx_new(5, i)
            perms = [a for a in ctx.nonzero() if is_permutation(make_G(ctx, a))]
            self.assertEqual(len(perms), 11)
            self.assertEqual(perms, [a for a in ctx.nonzero() if root_free(ctx, PolyVariant.Q, a)])

    def test_m5_h_same_parameters(self):
        ctx = ctx_new(5, 2)
        g_perms = {a for a in ctx.nonzero() if is_permutation(make_G(ctx, a))}
        h_perms = {a for a in ctx.nonzero() if is_permutation(make_H(ctx, a))}
        self.assertEqual(h_perms, g_perms)

    def test_collision_is_real(self):
        ctx = ctx_new(5, 1)
        a = next(a for a in ctx.nonzero() if not root_free(ctx, PolyVariant.Q, a))
        f = make_G(ctx, a)
        p = first_collision(f, chunk_size=4096)
        self.assertIsNotNone(p)
        image = f.eval(f.unpack(p))
        earlier = [q for q in range(p) if f.eval(f.unpack(q)) == image]
        self.assertTrue(earlier)

    @override_settings(APNTRI_MAX_IMAGE_M=3)
    def test_budget(self):
        with self.assertRaises(FieldTooLarge):
            is_permutation(make_G(ctx_new(5, 1), 1))


class KernelCheckerTests(SimpleTestCase):

    def test_m3_every_parameter(self):
        ctx = ctx_new(3, 1)
        for a in ctx.nonzero():
            self.assertEqual(is_apn_kernel(make_G(ctx, a)), (True, 2))

    def test_m5_bad_parameter(self):
        ctx = ctx_new(5, 1)
        a = next(a for a in ctx.nonzero() if not root_free(ctx, PolyVariant.Q, a))
        is_apn, max_kernel = is_apn_kernel(make_G(ctx, a))
        self.assertFalse(is_apn)
        self.assertGreaterEqual(max_kernel, 32)

    def test_m5_matches_criterion_both_families(self):
        for i in (1, 2):
            ctx = ctx_new(5, i)
            for a in ctx.nonzero():
                self.assertEqual(is_apn_kernel(make_G(ctx, a))[0], root_free(ctx, PolyVariant.Q, a))
                self.assertEqual(is_apn_kernel(make_H(ctx, a))[0], root_free(ctx, PolyVariant.PPRIME, a))

    def test_permutation_iff_apn(self):
        ctx = ctx_new(5, 1)
        for a in ctx.nonzero():
            f = make_G(ctx, a)
            self.assertEqual(is_permutation(f), is_apn_kernel(f)[0])

    def test_chunking_does_not_change_the_verdict(self):
        ctx = ctx_new(5, 1)
        for a in (1, 3, 30):
            f = make_G(ctx, a)
            whole = scan_kernels(f)
            pieces = scan_kernels(f, chunk_size=1000)
            self.assertEqual(whole[0], pieces[0])
            self.assertEqual(whole[2], pieces[2])

    def test_merge_stops_at_first_violation(self):
        results = [
            {'lo': 200, 'hi': 300, 'max_kernel': 64, 'witness': 250},
            {'lo': 1, 'hi': 100, 'max_kernel': 2, 'witness': None},
            {'lo': 100, 'hi': 200, 'max_kernel': 8, 'witness': 120},
        ]
        self.assertEqual(merge_chunks(results), (False, 8, 120))
        self.assertEqual(merge_chunks(results[1:2]), (True, 2, None))

    def test_celery_task_matches_local_chunk(self):
        ctx = ctx_new(3, 1)
        f = make_H(ctx, 6)
        result = scan_kernel_chunk.delay(f.to_payload(), 1, 200).get()
        self.assertEqual(result, kernel_chunk(f, 1, 200))


class ExhaustiveCheckerTests(SimpleTestCase):

    def test_m3_a1_both_families(self):
        ctx = ctx_new(3, 1)
        self.assertTrue(is_apn_exhaustive(make_G(ctx, 1)))
        self.assertTrue(is_apn_exhaustive(make_H(ctx, 1)))

    def test_m3_every_parameter(self):
        ctx = ctx_new(3, 2)
        for a in ctx.nonzero():
            self.assertTrue(is_apn_exhaustive(make_G(ctx, a)))

    @tag('slow')
    def test_three_way_agreement_m5(self):
        ctx = ctx_new(5, 1)
        for a in ctx.nonzero():
            for f, variant in ((make_G(ctx, a), PolyVariant.Q), (make_H(ctx, a), PolyVariant.PPRIME)):
                exhaustive = is_apn_exhaustive(f)
                self.assertEqual(exhaustive, is_apn_kernel(f)[0], repr(f))
                self.assertEqual(exhaustive, root_free(ctx, variant, a), repr(f))

    def test_solution_counts_are_affine(self):
        ctx = ctx_new(3, 1)
        for a in (1, 2, 5):
            self.assertTrue(solution_counts_are_affine(make_G(ctx, a)))
            self.assertTrue(solution_counts_are_affine(make_H(ctx, a)))

    def test_budget(self):
        with self.assertRaises(FieldTooLarge):
            is_apn_exhaustive(make_G(ctx_new(7, 1), 1))


class StatusTests(SimpleTestCase):

    def test_default_method_small_field(self):
        report = status(make_G(ctx_new(3, 1), 1))
        self.assertEqual(report.method, 'exhaustive')
        self.assertEqual(report.perm_method, 'image')
        self.assertTrue(report.is_permutation and report.is_apn)
        self.assertEqual(report.max_kernel, 2)

    def test_kernel_method_reports_witness(self):
        ctx = ctx_new(5, 1)
        a = next(a for a in ctx.nonzero() if not root_free(ctx, PolyVariant.Q, a))
        report = status(make_G(ctx, a), method='kernel')
        self.assertFalse(report.is_apn)
        self.assertFalse(report.is_permutation)
        self.assertIsNotNone(report.witness)
        self.assertGreater(report.max_kernel, 2)

    def test_exhaustive_reports_largest_kernel(self):
        ctx = ctx_new(5, 1)
        a = next(a for a in ctx.nonzero() if not root_free(ctx, PolyVariant.Q, a))
        f = make_G(ctx, a)
        report = status(f, method='exhaustive')
        self.assertFalse(report.is_apn)
        every = kernel_sizes(f, np.arange(1, 1 << 15, dtype=np.int64))
        self.assertEqual(report.max_kernel, int(every.max()))
        self.assertGreaterEqual(report.max_kernel, 32)
        self.assertGreaterEqual(report.max_kernel, int(kernel_sizes(f, [f.pack(report.witness)])[0]))

    def test_image_method_measures_no_kernel(self):
        ctx = ctx_new(3, 1)
        report = status(make_G(ctx, 1), method='image')
        self.assertEqual((report.is_apn, report.max_kernel), (True, 2))

    def test_sweep_budget(self):
        f = make_G(ctx_new(3, 1), 1)
        with self.assertRaises(BudgetExceeded):
            status(f, method='kernel', max_units=100)
        with self.assertRaises(BudgetExceeded):
            status(f, method='exhaustive', max_units=512)
        self.assertTrue(status(f, method='criterion', max_units=1).is_apn)

    def test_criterion_above_budget(self):
        ctx = ctx_new(11, 1)
        report = status(make_G(ctx, 1))
        self.assertEqual((report.method, report.perm_method), ('criterion', 'criterion'))
        self.assertTrue(report.is_apn)

    def test_criterion_h_family(self):
        ctx = ctx_new(7, 1)
        report = status(make_H(ctx, 1), method='criterion')
        self.assertFalse(report.is_apn)
        self.assertEqual(report.max_kernel, 128)

    def test_serialized(self):
        report = status(make_H(ctx_new(3, 1), 3))
        data = StatusReportSerializer(report).data
        self.assertEqual(data['a'], '0x3')
        self.assertEqual(data['family'], 'H')
        self.assertIsNone(data['witness'])
        row = status_csv_row(report)
        self.assertEqual((row['is_perm'], row['is_apn'], row['max_kernel']), (1, 1, 2))
