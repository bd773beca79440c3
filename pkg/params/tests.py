from decimal import Decimal

from django.test import SimpleTestCase, tag

from gf2m.exceptions import FieldTooLarge, GcdViolation, OddDegreeRequired
from gf2m.field import ctx_new
from univariate.polys import PolyVariant

from .fibers import fiber_stats, lower_bound
from .goodset import co_goodness, g_values, good_set_gimage, good_set_rootscan
from .serializers import FiberStatsSerializer, GoodSetReportSerializer

# (m, i) -> (good count, a = 1 good)
GOOD_COUNTS = {
    (3, 1): (7, True),
    (3, 2): (7, True),
    (5, 1): (11, True),
    (5, 2): (11, True),
    (7, 1): (35, False),
    (7, 2): (35, False),
    (9, 1): (385, True),
    (11, 1): (595, True),
}


class GoodSetTests(SimpleTestCase):

    def test_rootscan_counts(self):
        for (m, i), (count, a1) in GOOD_COUNTS.items():
            report = good_set_rootscan(ctx_new(m, i))
            self.assertEqual(report.count, count, f'm={m} i={i}')
            self.assertEqual(report.a1_good, a1, f'm={m} i={i}')
            self.assertEqual(report.method, 'rootscan')

    def test_gimage_matches_rootscan(self):
        for m, i in GOOD_COUNTS:
            ctx = ctx_new(m, i)
            self.assertEqual(good_set_gimage(ctx).good, good_set_rootscan(ctx).good, f'm={m} i={i}')

    def test_good_sets_are_sorted(self):
        good = good_set_gimage(ctx_new(7, 1)).good
        self.assertEqual(list(good), sorted(good))
        self.assertNotIn(0, good)

    def test_g_of_one_is_zero(self):
        ctx = ctx_new(5, 1)
        self.assertEqual(int(g_values(ctx, [1])[0]), 0)

    def test_co_goodness(self):
        for m, i in ((3, 1), (5, 1), (5, 2), (7, 1), (7, 3), (9, 2)):
            self.assertTrue(co_goodness(ctx_new(m, i)), f'm={m} i={i}')

    def test_h_family_set(self):
        ctx = ctx_new(5, 1)
        self.assertEqual(good_set_rootscan(ctx, PolyVariant.PPRIME).count, 11)

    def test_theorem_hypotheses(self):
        with self.assertRaises(OddDegreeRequired):
            good_set_rootscan(ctx_new(4, 1))
        with self.assertRaises(GcdViolation):
            good_set_gimage(ctx_new(9, 3))

    def test_serialized(self):
        data = GoodSetReportSerializer(good_set_gimage(ctx_new(3, 1))).data
        self.assertEqual(data['count'], 7)
        self.assertEqual(data['good'][0], '0x1')
        self.assertTrue(data['a1_good'])


class LowerBoundTests(SimpleTestCase):

    def test_m11(self):
        bound = lower_bound(ctx_new(11, 1))
        self.assertEqual(str(bound), '97.765')
        self.assertEqual(bound.ceiling, 98)
        self.assertLessEqual(bound.ceiling, 595)

    def test_vacuous_small_fields(self):
        for m in (3, 5):
            bound = lower_bound(ctx_new(m, 1))
            self.assertTrue(bound.vacuous)
            self.assertLess(bound.value, Decimal(0))


class FiberTests(SimpleTestCase):

    def test_partition_identities(self):
        for m in range(3, 14):
            stats = fiber_stats(ctx_new(m, 1))
            self.assertTrue(stats.partition_ok, f'm={m}')

    def test_max_fiber_at_most_d(self):
        for m, i in ((5, 1), (7, 2), (9, 1)):
            ctx = ctx_new(m, i)
            self.assertLessEqual(max(fiber_stats(ctx).class_counts), ctx.d)

    def test_empty_fibers_are_good_parameters(self):
        for m, i in GOOD_COUNTS:
            ctx = ctx_new(m, i)
            self.assertEqual(fiber_stats(ctx).c0, GOOD_COUNTS[(m, i)][0])

    def test_direct_counts_small(self):
        for m in (3, 5, 7):
            stats = fiber_stats(ctx_new(m, 1), direct=True)
            self.assertEqual(stats.gamma_affine, stats.collision_pairs)
            self.assertEqual(stats.gamma_direct, stats.collision_pairs)
            self.assertEqual(stats.gamma_diagonal, 0)
            self.assertTrue(stats.counts_agree)

    @tag('slow')
    def test_direct_counts_large(self):
        for m in (9, 11):
            stats = fiber_stats(ctx_new(m, 1), direct=True)
            self.assertEqual(stats.gamma_affine, stats.collision_pairs, f'm={m}')
            self.assertEqual(stats.gamma_direct, stats.collision_pairs, f'm={m}')

    def test_c0_above_bound_m11(self):
        stats = fiber_stats(ctx_new(11, 1))
        self.assertGreaterEqual(stats.c0, stats.lower_bound.ceiling)

    def test_direct_budget(self):
        with self.assertRaises(FieldTooLarge):
            fiber_stats(ctx_new(15, 1), direct=True)

    def test_serialized(self):
        data = FiberStatsSerializer(fiber_stats(ctx_new(5, 1), direct=True)).data
        self.assertEqual(data['c0'], 11)
        self.assertTrue(data['partition_ok'])
        self.assertEqual(sum(data['class_counts'].values()), 32)
