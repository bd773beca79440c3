import numpy as np
from django.test import SimpleTestCase, tag

from gf2m.exceptions import ZeroParameter
from gf2m.field import ctx_new

from .linearized import (
    companion_product_test,
    linearized_eval,
    linearized_kernel_dim,
)
from .polys import (
    PolyVariant,
    eval_variant,
    eval_variant_vec,
    root_count_histogram,
    roots_in_field,
    substitution_steps,
    variants_root_consistent,
)
from .serializers import RootReportSerializer


class EvaluationTests(SimpleTestCase):

    def test_every_variant_is_one_at_zero(self):
        for m, i in ((3, 1), (5, 2), (7, 3)):
            ctx = ctx_new(m, i)
            for a in ctx.nonzero():
                for variant in PolyVariant:
                    self.assertEqual(eval_variant(ctx, variant, a, 0), 1)

    def test_qq_is_q_of_frobenius(self):
        ctx = ctx_new(5, 2)
        for a in ctx.nonzero():
            aq = ctx.frob_q(a)
            for t in ctx.elements():
                self.assertEqual(
                    eval_variant(ctx, PolyVariant.QQ, a, t),
                    eval_variant(ctx, PolyVariant.Q, aq, t),
                )

    def test_q_matches_closed_form(self):
        ctx = ctx_new(5, 1)
        for a in (1, 5, 30):
            for t in ctx.elements():
                expected = ctx.pow(t, ctx.d) ^ ctx.mul(a, t) ^ 1
                self.assertEqual(eval_variant(ctx, PolyVariant.Q, a, t), expected)

    def test_p_matches_expanded_form(self):
        ctx = ctx_new(5, 1)
        q = ctx.q
        for a in (1, 7):
            for t in ctx.elements():
                expanded = (
                    ctx.pow(t, ctx.d)
                    ^ ctx.mul(ctx.pow(a, q + 1), ctx.pow(t, q * q + q))
                    ^ ctx.mul(ctx.pow(a, q), ctx.pow(t, q * q))
                    ^ ctx.mul(a, ctx.pow(t, q))
                    ^ 1
                )
                self.assertEqual(eval_variant(ctx, PolyVariant.P, a, t), expanded)

    def test_vector_and_scalar_agree(self):
        ctx = ctx_new(7, 2)
        points = ctx.elements_array()
        for variant in PolyVariant:
            values = eval_variant_vec(ctx, variant, 9, points)
            self.assertEqual(list(values), [eval_variant(ctx, variant, 9, int(t)) for t in points])

    def test_a1_has_no_root_at_m5(self):
        ctx = ctx_new(5, 1)
        for t in ctx.nonzero():
            self.assertNotEqual(eval_variant(ctx, PolyVariant.Q, 1, t), 0)

    def test_zero_parameter(self):
        ctx = ctx_new(3, 1)
        with self.assertRaises(ZeroParameter):
            eval_variant(ctx, PolyVariant.Q, 0, 1)
        with self.assertRaises(ZeroParameter):
            roots_in_field(ctx, PolyVariant.Q, 0)
        with self.assertRaises(ZeroParameter):
            linearized_kernel_dim(ctx, 0)


class RootScanTests(SimpleTestCase):

    def test_m3_is_root_free(self):
        for i in (1, 2):
            ctx = ctx_new(3, i)
            for a in ctx.nonzero():
                self.assertEqual(roots_in_field(ctx, PolyVariant.Q, a).count, 0)

    def test_m7_a1_has_roots(self):
        ctx = ctx_new(7, 1)
        report = roots_in_field(ctx, PolyVariant.Q, 1)
        self.assertGreaterEqual(report.count, 1)
        for r in report.roots:
            self.assertNotEqual(r, 0)
            self.assertEqual(eval_variant(ctx, PolyVariant.Q, 1, r), 0)
        self.assertEqual(list(report.roots), sorted(report.roots))

    def test_m5_bad_parameters_have_one_or_three_roots(self):
        histogram = root_count_histogram(ctx_new(5, 1))
        self.assertEqual(histogram.get(0), 11)
        self.assertLessEqual(set(histogram), {0, 1, 3})

    def test_serialized_report(self):
        ctx = ctx_new(7, 1)
        report = roots_in_field(ctx, PolyVariant.Q, 1)
        data = RootReportSerializer(report).data
        self.assertEqual(data['variant'], 'Q')
        self.assertEqual(data['a'], '0x1')
        self.assertEqual(data['count'], report.count)
        self.assertEqual(data['roots'], [hex(r) for r in report.roots])


class RootEquivalenceTests(SimpleTestCase):

    def test_consistent_m3(self):
        ctx = ctx_new(3, 1)
        for a in ctx.nonzero():
            self.assertTrue(variants_root_consistent(ctx, a))

    def test_consistent_m5_and_m7(self):
        for m, i in ((5, 1), (5, 2), (7, 1), (7, 2)):
            ctx = ctx_new(m, i)
            for a in ctx.nonzero():
                self.assertTrue(variants_root_consistent(ctx, a), f'm={m} i={i} a={hex(a)}')

    def test_substitution_steps(self):
        for m, i in ((3, 1), (5, 1), (5, 2), (7, 1), (7, 3)):
            ctx = ctx_new(m, i)
            for a in ctx.nonzero():
                steps = substitution_steps(ctx, a)
                self.assertTrue(all(steps.values()), f'm={m} i={i} a={hex(a)} {steps}')

    def test_reciprocity_pointwise(self):
        ctx = ctx_new(7, 1)
        for a in ctx.nonzero():
            for t in ctx.nonzero():
                self.assertEqual(
                    eval_variant(ctx, PolyVariant.PPRIME, a, t) == 0,
                    eval_variant(ctx, PolyVariant.Q, a, ctx.inv(t)) == 0,
                )


class LinearizedTests(SimpleTestCase):

    def test_linear_map(self):
        ctx = ctx_new(5, 1)
        self.assertEqual(linearized_eval(ctx, 3, 0), 0)
        for s in ctx.elements():
            for u in (1, 6, 17):
                self.assertEqual(
                    linearized_eval(ctx, 3, s ^ u),
                    linearized_eval(ctx, 3, s) ^ linearized_eval(ctx, 3, u),
                )

    def test_kernel_dim_matches_enumeration(self):
        ctx = ctx_new(5, 2)
        for a in ctx.nonzero():
            zeros = sum(1 for s in ctx.elements() if linearized_eval(ctx, a, s) == 0)
            self.assertEqual(zeros, 1 << linearized_kernel_dim(ctx, a))

    def test_a1_m7_kernel(self):
        self.assertGreaterEqual(linearized_kernel_dim(ctx_new(7, 1), 1), 1)

    def test_kernel_nontrivial_iff_q_has_root(self):
        for m in (3, 5, 7, 9):
            ctx = ctx_new(m, 1)
            for a in ctx.nonzero():
                has_root = roots_in_field(ctx, PolyVariant.Q, a).count > 0
                self.assertEqual(linearized_kernel_dim(ctx, a) > 0, has_root)

    def test_root_count_is_kernel_size_minus_one(self):
        ctx = ctx_new(7, 1)
        for a in ctx.nonzero():
            count = roots_in_field(ctx, PolyVariant.Q, a).count
            self.assertEqual(count, (1 << linearized_kernel_dim(ctx, a)) - 1)


class CompanionProductTests(SimpleTestCase):

    def test_examples(self):
        self.assertTrue(companion_product_test(ctx_new(7, 1), 1))
        self.assertFalse(companion_product_test(ctx_new(5, 1), 1))

    def test_agrees_with_kernel_dimension(self):
        for m, i in ((3, 1), (5, 1), (5, 2), (7, 1), (7, 2), (9, 1)):
            ctx = ctx_new(m, i)
            for a in ctx.nonzero():
                self.assertEqual(
                    companion_product_test(ctx, a),
                    linearized_kernel_dim(ctx, a) > 0,
                    f'm={m} i={i} a={hex(a)}',
                )

    @tag('slow')
    def test_a1_singular_exactly_when_seven_divides_m(self):
        for m in range(3, 22, 2):
            ctx = ctx_new(m, 1)
            self.assertEqual(companion_product_test(ctx, 1), m % 7 == 0, f'm={m}')
