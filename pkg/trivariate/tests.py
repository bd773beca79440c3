import numpy as np
from django.test import SimpleTestCase, tag

from gf2m import linalg
from gf2m.exceptions import FieldTooLarge, ZeroDirection, ZeroParameter
from gf2m.field import ctx_new
from univariate.polys import PolyVariant, eval_variant, roots_in_field

from .differential import (
    DirectionType,
    classify_direction_G,
    classify_directions_G,
    diff_kernel_basis,
    diff_kernel_size,
    diff_kernel_size_enumerated,
    h_factorization_check,
    h_value,
    h_zero_count,
    kernel_sizes,
)
from .quadform import (
    QuadForm3,
    Triple,
    affine_part_vanishes,
    make_G,
    make_H,
    swap_conjugate,
    swap_counterexample,
)
from .serializers import KernelProfileSerializer


def bad_parameters(ctx):
    return [a for a in ctx.nonzero() if roots_in_field(ctx, PolyVariant.Q, a).count]


def good_parameters(ctx):
    return [a for a in ctx.nonzero() if not roots_in_field(ctx, PolyVariant.Q, a).count]


def random_triples(ctx, count, seed=0):
    rng = np.random.default_rng(seed)
    values = rng.integers(0, ctx.size, size=(count, 3))
    return [Triple(*(int(c) for c in row)) for row in values]


class FamilyTests(SimpleTestCase):

    def test_zero_maps_to_zero(self):
        ctx = ctx_new(5, 1)
        for a in (1, 2, 19):
            self.assertTrue(affine_part_vanishes(make_G(ctx, a)))
            self.assertTrue(affine_part_vanishes(make_H(ctx, a)))

    def test_unit_x(self):
        ctx = ctx_new(3, 1)
        self.assertEqual(make_G(ctx, 1).eval(Triple(1, 0, 0)), Triple(1, 0, 0))

    def test_g_matches_definition(self):
        ctx = ctx_new(5, 2)
        a = 7
        f = make_G(ctx, a)
        mul, fq = ctx.mul, ctx.frob_q
        for x, y, z in random_triples(ctx, 200):
            expected = Triple(
                mul(fq(x), x) ^ mul(a, mul(fq(x), z)) ^ mul(y, fq(z)),
                mul(fq(x), z) ^ mul(fq(y), y),
                mul(x, fq(y)) ^ mul(a, mul(fq(y), z)) ^ mul(fq(z), z),
            )
            self.assertEqual(f.eval(Triple(x, y, z)), expected)

    def test_h_matches_definition(self):
        ctx = ctx_new(5, 2)
        a = 11
        f = make_H(ctx, a)
        mul, fq = ctx.mul, ctx.frob_q
        for x, y, z in random_triples(ctx, 200, seed=1):
            expected = Triple(
                mul(fq(x), x) ^ mul(a, mul(x, fq(y))) ^ mul(y, fq(z)),
                mul(x, fq(y)) ^ mul(fq(z), z),
                mul(fq(x), z) ^ mul(fq(y), y) ^ mul(a, mul(fq(y), z)),
            )
            self.assertEqual(f.eval(Triple(x, y, z)), expected)

    def test_zero_parameter(self):
        ctx = ctx_new(3, 1)
        with self.assertRaises(ZeroParameter):
            make_G(ctx, 0)
        with self.assertRaises(ZeroParameter):
            make_H(ctx, 0)

    def test_eval_matches_naive_evaluator(self):
        ctx = ctx_new(7, 1)
        f = make_G(ctx, 0x35)
        for v in random_triples(ctx, 10_000, seed=2):
            self.assertEqual(f.eval(v), f.eval_naive(v))

    def test_packed_evaluation_matches_scalar(self):
        ctx = ctx_new(5, 1)
        f = make_H(ctx, 3)
        inputs = random_triples(ctx, 500, seed=3)
        packed = np.array([f.pack(v) for v in inputs], dtype=np.int64)
        out = f.eval_packed(packed)
        for v, p in zip(inputs, out):
            self.assertEqual(f.unpack(int(p)), f.eval(v))

    def test_payload_rebuilds_the_same_form(self):
        ctx = ctx_new(7, 3)
        f = make_G(ctx, 0x51)
        rebuilt = QuadForm3.from_payload(f.to_payload())
        self.assertEqual(rebuilt, f)
        self.assertEqual((rebuilt.family, rebuilt.a), ('G', 0x51))


class SwapSymmetryTests(SimpleTestCase):

    def swap(self, v):
        return Triple(v.z, v.y, v.x)

    def test_conjugate_is_sigma_f_sigma(self):
        ctx = ctx_new(5, 1)
        f = make_G(ctx, 6)
        conjugate = swap_conjugate(f)
        for v in random_triples(ctx, 300, seed=4):
            self.assertEqual(conjugate.eval(v), self.swap(f.eval(self.swap(v))))
        self.assertEqual(swap_conjugate(conjugate), f)

    def test_swap_identity_fails_with_explicit_witness(self):
        ctx = ctx_new(3, 1)
        f = make_G(ctx, 1)
        self.assertEqual(f.eval(Triple(0, 1, 1)), Triple(1, 1, 0))
        self.assertEqual(f.eval(Triple(1, 1, 0)), Triple(1, 1, 1))

    def test_counterexample_found_for_every_parameter(self):
        for m in (3, 5):
            ctx = ctx_new(m, 1)
            for a in ctx.nonzero():
                f = make_G(ctx, a)
                w = swap_counterexample(f)
                self.assertIsNotNone(w)
                self.assertNotEqual(f.eval(self.swap(w)), self.swap(f.eval(w)))


class KernelTests(SimpleTestCase):

    def test_linear_algebra_matches_enumeration_m3(self):
        ctx = ctx_new(3, 1)
        f = make_G(ctx, 3)
        for p in range(1, 1 << 9):
            d = f.unpack(p)
            self.assertEqual(diff_kernel_size(f, d), diff_kernel_size_enumerated(f, d))

    def test_linear_algebra_matches_enumeration_m5(self):
        ctx = ctx_new(5, 1)
        for a in (1, bad_parameters(ctx)[0]):
            f = make_G(ctx, a)
            for d in random_triples(ctx, 500, seed=a):
                if d.is_zero():
                    continue
                self.assertEqual(diff_kernel_size(f, d), diff_kernel_size_enumerated(f, d))

    def test_kernel_contains_zero_and_direction(self):
        ctx = ctx_new(5, 1)
        f = make_H(ctx, bad_parameters(ctx)[0])
        for d in random_triples(ctx, 100, seed=5):
            if d.is_zero():
                continue
            basis = [f.pack(v) for v in diff_kernel_basis(f, d)]
            self.assertGreaterEqual(diff_kernel_size(f, d), 2)
            self.assertEqual(linalg.rank(basis + [f.pack(d)]), linalg.rank(basis))

    def test_batch_matches_single(self):
        ctx = ctx_new(3, 2)
        f = make_H(ctx, 5)
        directions = np.arange(1, 1 << 9, dtype=np.int64)
        sizes = kernel_sizes(f, directions)
        for p, size in zip(directions, sizes):
            self.assertEqual(int(size), diff_kernel_size(f, f.unpack(int(p))))

    def test_good_parameter_has_all_kernels_two(self):
        ctx = ctx_new(5, 1)
        f = make_G(ctx, 1)
        sizes = kernel_sizes(f, np.arange(1, 1 << 15, dtype=np.int64))
        self.assertTrue((sizes == 2).all())

    def test_axis_directions(self):
        for m in (3, 5):
            ctx = ctx_new(m, 1)
            for a in ctx.nonzero():
                f = make_G(ctx, a)
                axis = np.concatenate([ctx.nonzero_array() << (s * m) for s in range(3)])
                self.assertTrue((kernel_sizes(f, axis) == 2).all())

    def test_type1_root_direction_has_full_kernel(self):
        ctx = ctx_new(5, 1)
        a = bad_parameters(ctx)[0]
        theta = roots_in_field(ctx, PolyVariant.QQ, a).roots[0]
        f = make_G(ctx, a)
        for b in (1, 9, 30):
            self.assertEqual(diff_kernel_size(f, Triple(ctx.mul(theta, b), b, 0)), 32)

    def test_zero_direction(self):
        f = make_G(ctx_new(3, 1), 1)
        with self.assertRaises(ZeroDirection):
            diff_kernel_size(f, Triple(0, 0, 0))
        with self.assertRaises(ZeroDirection):
            classify_direction_G(f.ctx, 1, (0, 0, 0))


class ClassificationTests(SimpleTestCase):

    def test_axis(self):
        ctx = ctx_new(5, 1)
        profile = classify_direction_G(ctx, 3, Triple(7, 0, 0))
        self.assertIs(profile.direction_type, DirectionType.AXIS)
        self.assertEqual((profile.predicted, profile.kernel_size), (2, 2))
        self.assertTrue(profile.consistent)

    def test_type2a_root_direction(self):
        ctx = ctx_new(5, 1)
        a = bad_parameters(ctx)[0]
        root = roots_in_field(ctx, PolyVariant.Q, a).roots[0]
        profile = classify_direction_G(ctx, a, Triple(1, 0, root))
        self.assertIs(profile.direction_type, DirectionType.TYPE2A)
        self.assertEqual(profile.predicted, 32)
        self.assertEqual(profile.kernel_size, 32)

    def test_type3_good_parameter(self):
        ctx = ctx_new(5, 1)
        a = good_parameters(ctx)[-1]
        for d in random_triples(ctx, 50, seed=6):
            if not (d.x and d.y and d.z):
                continue
            profile = classify_direction_G(ctx, a, d)
            self.assertIs(profile.direction_type, DirectionType.TYPE3)
            self.assertTrue(profile.exact)
            self.assertEqual((profile.predicted, profile.kernel_size), (2, 2))
            self.assertFalse(profile.h_zero)

    def test_type3_bad_parameter_on_h_zero_set(self):
        ctx = ctx_new(5, 1)
        a = bad_parameters(ctx)[0]
        root = roots_in_field(ctx, PolyVariant.Q, a).roots[0]
        # A + B root + C (root^(q+1) + a) = 0 with B = 1
        slope = ctx.pow(root, ctx.q + 1) ^ a
        C = next(c for c in ctx.nonzero() if root ^ ctx.mul(c, slope))
        d = Triple(root ^ ctx.mul(C, slope), 1, C)
        profile = classify_direction_G(ctx, a, d)
        self.assertIs(profile.direction_type, DirectionType.TYPE3)
        self.assertTrue(profile.h_zero)
        self.assertFalse(profile.exact)
        self.assertEqual(profile.predicted, 32)
        self.assertGreaterEqual(profile.kernel_size, 32)
        self.assertTrue(profile.consistent)

    def test_type3_bad_parameter_off_h_zero_set(self):
        ctx = ctx_new(5, 1)
        a = bad_parameters(ctx)[0]
        d = next(
            d for d in random_triples(ctx, 200, seed=8)
            if d.x and d.y and d.z and h_value(ctx, a, d)
        )
        profile = classify_direction_G(ctx, a, d)
        self.assertFalse(profile.h_zero)
        self.assertFalse(profile.exact)
        self.assertEqual(profile.predicted, 2)

    def test_every_direction_m3(self):
        for i in (1, 2):
            ctx = ctx_new(3, i)
            for a in ctx.nonzero():
                summary = classify_directions_G(ctx, a)
                self.assertTrue(summary.consistent, summary.first_mismatch)
                self.assertEqual(sum(t.total for t in summary.tallies.values()), 511)

    @tag('slow')
    def test_every_direction_m5(self):
        ctx = ctx_new(5, 1)
        for a in ctx.nonzero():
            summary = classify_directions_G(ctx, a)
            self.assertEqual(
                sum(t.mismatches for t in summary.tallies.values()), 0,
                f'a={hex(a)} {summary.first_mismatch}',
            )
            self.assertEqual(summary.tallies[DirectionType.TYPE3].bound_missed, 0)

    def test_serialized_profile(self):
        ctx = ctx_new(3, 1)
        data = KernelProfileSerializer(classify_direction_G(ctx, 1, Triple(1, 2, 0))).data
        self.assertEqual(data['direction'], ['0x1', '0x2', '0x0'])
        self.assertEqual(data['direction_type'], 'Type1')
        self.assertEqual(data['kernel_size'], 2)
        self.assertIsNone(data['h_zero'])


class HPolynomialTests(SimpleTestCase):

    def test_coordinate_plane_reductions(self):
        ctx = ctx_new(5, 1)
        a = 13
        for A, B, C in random_triples(ctx, 100, seed=7):
            if not (A and B and C):
                continue
            self.assertEqual(
                h_value(ctx, a, (A, B, 0)),
                ctx.mul(ctx.pow(B, ctx.d), eval_variant(ctx, PolyVariant.QQ, a, ctx.div(A, B))),
            )
            self.assertEqual(
                h_value(ctx, a, (A, 0, C)),
                ctx.mul(ctx.pow(A, ctx.d), eval_variant(ctx, PolyVariant.Q, a, ctx.div(C, A))),
            )

    def test_m3_nowhere_zero(self):
        ctx = ctx_new(3, 1)
        for a in ctx.nonzero():
            self.assertEqual(h_zero_count(ctx, a), 0)

    def test_factorization_check(self):
        for m in (3, 5):
            ctx = ctx_new(m, 1)
            for a in ctx.nonzero():
                self.assertTrue(h_factorization_check(ctx, a), f'm={m} a={hex(a)}')

    def test_good_and_bad_at_m5(self):
        ctx = ctx_new(5, 1)
        self.assertEqual(h_zero_count(ctx, 1), 0)
        self.assertGreater(h_zero_count(ctx, bad_parameters(ctx)[0]), 0)

    def test_budget(self):
        with self.assertRaises(FieldTooLarge):
            h_zero_count(ctx_new(7, 1), 1)
