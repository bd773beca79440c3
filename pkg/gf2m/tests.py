from math import gcd

import numpy as np
from django.test import SimpleTestCase, override_settings

from .field import ctx_new, is_irreducible, smallest_irreducible, TaggedFe
from .exceptions import (
    BudgetExceeded,
    ContextMismatch,
    DegreeOutOfRange,
    DivisionByZero,
    GcdViolation,
    InvalidElement,
    NonIrreducibleModulus,
    OddDegreeRequired,
)
from . import linalg
from .conf import check_work
from .serializers import FieldCtxSerializer


class ContextConstructionTests(SimpleTestCase):

    def test_smallest_modulus_for_m3(self):
        ctx = ctx_new(3, 1)
        self.assertEqual(ctx.modulus, 0b1011)
        self.assertEqual(ctx.modulus_hex, '0xb')

    def test_smallest_modulus_is_first_irreducible(self):
        for m in (4, 5, 8, 11):
            modulus = smallest_irreducible(m)
            self.assertEqual(modulus.bit_length() - 1, m)
            for candidate in range(1 << m, modulus):
                self.assertFalse(is_irreducible(candidate))

    def test_irreducibility_matches_root_and_factor_check(self):
        # degree 3: irreducible iff no root in F_2
        for poly in range(8, 16):
            has_root = (poly & 1) == 0 or bin(poly).count('1') % 2 == 0
            self.assertEqual(is_irreducible(poly), not has_root)

    def test_q_derived_from_i(self):
        self.assertEqual(ctx_new(5, 2).q, 4)
        self.assertEqual(ctx_new(5, 2).d, 21)

    def test_theorem_mode_rejects_gcd(self):
        with self.assertRaises(GcdViolation):
            ctx_new(3, 3, theorem_mode=True)
        with self.assertRaises(GcdViolation):
            ctx_new(9, 3, theorem_mode=True)

    def test_theorem_mode_rejects_even_m(self):
        with self.assertRaises(OddDegreeRequired):
            ctx_new(4, 1, theorem_mode=True)

    def test_raw_mode_accepts_gcd_and_even(self):
        self.assertEqual(ctx_new(9, 3).q, 8)
        self.assertEqual(ctx_new(4, 1).order, 15)

    def test_degree_range(self):
        for m, i in ((2, 1), (25, 1), (5, 0), (5, 5)):
            with self.assertRaises(DegreeOutOfRange):
                ctx_new(m, i)

    def test_modulus_override(self):
        ctx = ctx_new(3, 1, modulus_override=0b1101)
        self.assertEqual(ctx.modulus, 0b1101)
        with self.assertRaises(NonIrreducibleModulus):
            ctx_new(3, 1, modulus_override=0b1001)
        with self.assertRaises(NonIrreducibleModulus):
            ctx_new(3, 1, modulus_override=0b111)

    def test_hex_codec(self):
        ctx = ctx_new(3, 1)
        self.assertEqual(ctx.to_hex(3), '0x3')
        self.assertEqual(ctx.from_hex('0x3'), 3)
        with self.assertRaises(InvalidElement):
            ctx.from_hex('0x8')
        with self.assertRaises(InvalidElement):
            ctx.from_hex('zz')


class ArithmeticTests(SimpleTestCase):

    def test_characteristic_two(self):
        ctx = ctx_new(5, 1)
        for x in ctx.elements():
            self.assertEqual(ctx.add(x, x), 0)

    def test_small_products(self):
        ctx = ctx_new(3, 1)
        alpha, alpha2 = 0b010, 0b100
        self.assertEqual(ctx.mul(alpha, alpha2), 0b011)
        self.assertEqual(ctx.inv(1), 1)

    def test_inverse_of_zero(self):
        ctx = ctx_new(3, 1)
        with self.assertRaises(DivisionByZero):
            ctx.inv(0)
        with self.assertRaises(ZeroDivisionError):
            ctx.div(1, 0)

    def test_field_axioms_exhaustive_m3(self):
        ctx = ctx_new(3, 1)
        elements = list(ctx.elements())
        for x in elements:
            for y in elements:
                self.assertEqual(ctx.mul(x, y), ctx.mul(y, x))
                for z in elements:
                    self.assertEqual(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)))
                    self.assertEqual(ctx.mul(x, y ^ z), ctx.mul(x, y) ^ ctx.mul(x, z))
            if x:
                self.assertEqual(ctx.mul(x, ctx.inv(x)), 1)

    def test_field_axioms_sampled(self):
        rng = np.random.default_rng(2024)
        for m in (5, 9, 17, 24):
            ctx = ctx_new(m, 1)
            count = 100_000 if m == 5 else 5_000
            x, y, z = (rng.integers(0, ctx.size, count) for _ in range(3))
            np.testing.assert_array_equal(
                ctx.mul_vec(ctx.mul_vec(x, y), z), ctx.mul_vec(x, ctx.mul_vec(y, z)))
            np.testing.assert_array_equal(
                ctx.mul_vec(x, y ^ z), ctx.mul_vec(x, y) ^ ctx.mul_vec(x, z))
            nz = x[x != 0]
            np.testing.assert_array_equal(ctx.mul_vec(nz, ctx.inv_vec(nz)), np.ones_like(nz))

    def test_scalar_and_vector_paths_agree(self):
        for m in (5, 17):
            ctx = ctx_new(m, 2)
            rng = np.random.default_rng(m)
            x = rng.integers(0, ctx.size, 200)
            y = rng.integers(0, ctx.size, 200)
            expected = [ctx.mul(int(a), int(b)) for a, b in zip(x, y)]
            self.assertEqual(list(ctx.mul_vec(x, y)), expected)
            self.assertEqual(list(ctx.frob_vec(x)), [ctx.frob_q(int(a)) for a in x])
            self.assertEqual(list(ctx.pow_vec(x, 21)), [ctx.pow(int(a), 21) for a in x])

    def test_frobenius_examples(self):
        ctx = ctx_new(3, 1)
        self.assertEqual(ctx.frob_q(0), 0)
        self.assertEqual(ctx.frob_q(1), 1)
        self.assertEqual(ctx.frob_q(0b010), 0b100)

    def test_frobenius_is_bijection_of_order_m(self):
        for m, i in ((3, 1), (5, 2), (7, 3), (8, 3)):
            ctx = ctx_new(m, i)
            everything = ctx.elements_array()
            image = ctx.frob_vec(everything)
            self.assertEqual(len(np.unique(image)), ctx.size)
            power = everything
            for _ in range(m // gcd(i, m)):
                power = ctx.frob_vec(power)
            np.testing.assert_array_equal(power, everything)


class TraceTests(SimpleTestCase):

    def test_trace_examples(self):
        ctx = ctx_new(3, 1)
        self.assertEqual(ctx.trace_abs(0), 0)
        self.assertEqual(ctx.trace_abs(1), 1)

    def test_trace_zero_half_for_odd_m(self):
        for m in (3, 5, 7):
            ctx = ctx_new(m, 1)
            zeros = sum(1 for c in ctx.elements() if ctx.trace_abs(c) == 0)
            self.assertEqual(zeros, 1 << (m - 1))

    def test_trace_linear_and_frobenius_invariant(self):
        ctx = ctx_new(5, 1)
        for x in ctx.elements():
            self.assertEqual(ctx.trace_abs(ctx.square(x)), ctx.trace_abs(x))
            for y in ctx.elements():
                self.assertEqual(ctx.trace_abs(x ^ y), ctx.trace_abs(x) ^ ctx.trace_abs(y))

    def test_vector_trace_matches_definition(self):
        ctx = ctx_new(7, 1)
        expected = [ctx.trace_abs(c) for c in ctx.elements()]
        self.assertEqual(list(ctx.trace_vec(ctx.elements_array())), expected)


class ArtinSchreierTests(SimpleTestCase):

    def test_examples(self):
        self.assertTrue(ctx_new(5, 1).artin_schreier_solvable(0))
        self.assertFalse(ctx_new(5, 1).artin_schreier_solvable(1))

    def test_trace_criterion_matches_exhaustive_search(self):
        for m, i in ((3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 3)):
            ctx = ctx_new(m, i)
            for c in ctx.elements():
                self.assertEqual(
                    ctx.artin_schreier_solvable(c),
                    bool(ctx.artin_schreier_solutions(c)),
                    f'm={m} i={i} c={hex(c)}',
                )

    def test_requires_coprime_exponent(self):
        with self.assertRaises(GcdViolation):
            ctx_new(9, 3).artin_schreier_solvable(1)


class ConfTests(SimpleTestCase):

    def test_work_cap_from_override(self):
        with self.assertRaises(BudgetExceeded):
            check_work('kernel APN check', 511, 100)
        self.assertEqual(check_work('kernel APN check', 511, 511), 511)

    @override_settings(APNTRI_SCAN_BUDGET=0)
    def test_zero_setting_is_uncapped(self):
        self.assertEqual(check_work('kernel APN check', 1 << 30), 0)

    @override_settings(APNTRI_SCAN_BUDGET=10)
    def test_work_cap_from_settings(self):
        with self.assertRaises(BudgetExceeded):
            check_work('full-image permutation check', 512)

    def test_field_serialized(self):
        data = FieldCtxSerializer(ctx_new(5, 2)).data
        self.assertEqual(data, {'m': 5, 'i': 2, 'q': 4, 'd': 21, 'order': 31, 'modulus': '0x25'})


@override_settings(APNTRI_CONTEXT_TAGS=True)
class ContextTagTests(SimpleTestCase):

    def test_tagged_results(self):
        ctx = ctx_new(5, 1, modulus_override=0b100101)
        self.assertIsInstance(ctx.mul(3, 5), TaggedFe)

    def test_mixing_contexts_is_caught(self):
        small = ctx_new(5, 1, modulus_override=0b100101)
        other = ctx_new(5, 1, modulus_override=0b101001)
        x = small.mul(3, 7)
        with self.assertRaises(ContextMismatch):
            other.mul(x, 1)

    def test_out_of_range_bits_are_caught(self):
        ctx = ctx_new(5, 1, modulus_override=0b100101)
        with self.assertRaises(InvalidElement):
            ctx.mul(1 << 5, 1)


class LinalgTests(SimpleTestCase):

    def test_rank_and_kernel(self):
        images = [0b011, 0b110, 0b101]
        self.assertEqual(linalg.rank(images), 2)
        basis = linalg.kernel_basis(images)
        self.assertEqual(basis, [0b111])
        self.assertEqual(linalg.apply(images, 0b111), 0)

    def test_batch_rank_matches_scalar(self):
        rng = np.random.default_rng(7)
        columns = [rng.integers(0, 1 << 6, 500) for _ in range(6)]
        ranks = linalg.rank_batch(columns, 6)
        for s in range(500):
            self.assertEqual(ranks[s], linalg.rank([c[s] for c in columns]))
