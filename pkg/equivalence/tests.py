import numpy as np
from django.test import SimpleTestCase, tag

from gf2m.exceptions import BudgetExceeded, FieldTooLarge, ZeroParameter
from gf2m.field import ctx_new
from params.goodset import good_set_rootscan
from trivariate.quadform import Triple, make_G, make_H

from .diagonal import d0, diag_criterion, diag_recipe_witness, diag_search, witness_verifies
from .monomial import MonomialMap, compose_monomial, verify_witness
from .search import BUDGET_EXCEEDED, el_equiv_monomial_search, scope_label
from .serializers import DiagWitnessSerializer, EquivReportSerializer

FAMILIES = {'G': make_G, 'H': make_H}


class DiagonalCriterionTests(SimpleTestCase):

    def test_d0_values(self):
        self.assertEqual(d0(ctx_new(9, 3)), 73)
        self.assertEqual(d0(ctx_new(5, 1)), 1)
        self.assertEqual(d0(ctx_new(3, 1)), 7)

    def test_subgroup_size(self):
        for m, i in ((3, 1), (5, 1), (7, 1), (9, 1), (9, 3)):
            ctx = ctx_new(m, i)
            count = sum(1 for a in ctx.nonzero() if diag_criterion(ctx, a))
            self.assertEqual(count, d0(ctx), f'm={m} i={i}')

    def test_m5_only_a1(self):
        ctx = ctx_new(5, 1)
        self.assertEqual([a for a in ctx.nonzero() if diag_criterion(ctx, a)], [1])

    def test_zero_parameter(self):
        with self.assertRaises(ZeroParameter):
            diag_criterion(ctx_new(3, 1), 0)


class DiagonalSearchTests(SimpleTestCase):

    def test_m3_every_parameter(self):
        ctx = ctx_new(3, 1)
        for family in FAMILIES:
            for a in ctx.nonzero():
                witness = diag_search(ctx, family, a)
                self.assertIsNotNone(witness, f'{family} a={hex(a)}')
                self.assertTrue(witness_verifies(ctx, family, a, witness))

    def test_m5_agrees_with_criterion(self):
        for i in (1, 2):
            ctx = ctx_new(5, i)
            for family in FAMILIES:
                for a in ctx.nonzero():
                    found = diag_search(ctx, family, a) is not None
                    self.assertEqual(found, diag_criterion(ctx, a), f'{family} i={i} a={hex(a)}')

    def test_m5_a1_identity(self):
        ctx = ctx_new(5, 1)
        for family in FAMILIES:
            witness = diag_search(ctx, family, 1)
            self.assertEqual(
                (witness.mu, witness.nu, witness.rho, witness.l1, witness.l2, witness.l3),
                (1, 1, 1, 1, 1, 1),
            )

    @tag('slow')
    def test_m7_sampled(self):
        ctx = ctx_new(7, 1)
        rng = np.random.default_rng(7)
        sample = [1] + [int(a) for a in rng.choice(np.arange(2, 128), size=19, replace=False)]
        for family in FAMILIES:
            for a in sample:
                found = diag_search(ctx, family, a) is not None
                self.assertEqual(found, diag_criterion(ctx, a), f'{family} a={hex(a)}')

    def test_recipe(self):
        for m, i in ((3, 1), (3, 2), (9, 1), (9, 2), (9, 4), (9, 5), (9, 7), (9, 8)):
            ctx = ctx_new(m, i)
            for a in ctx.nonzero():
                if not diag_criterion(ctx, a):
                    self.assertIsNone(diag_recipe_witness(ctx, 'G', a))
                    continue
                for family, maker in FAMILIES.items():
                    witness = diag_recipe_witness(ctx, family, a)
                    self.assertTrue(witness_verifies(ctx, family, a, witness), f'{family} m={m} a={hex(a)}')
                    self.assertTrue(verify_witness(
                        maker(ctx, a), maker(ctx, 1), witness.inner, witness.outer, samples=2000,
                    ))

    def test_budget(self):
        with self.assertRaises(FieldTooLarge):
            diag_search(ctx_new(9, 1), 'G', 1)

    def test_serialized(self):
        witness = diag_search(ctx_new(3, 1), 'G', 3)
        data = DiagWitnessSerializer(witness).data
        self.assertEqual(set(data), {'mu', 'nu', 'rho', 'l1', 'l2', 'l3'})
        self.assertTrue(all(v.startswith('0x') for v in data.values()))


class CompositionTests(SimpleTestCase):

    def test_identity(self):
        ctx = ctx_new(5, 1)
        f = make_H(ctx, 9)
        identity = MonomialMap.identity()
        self.assertEqual(compose_monomial(f, identity, identity), f)

    def test_diagonal_scaling(self):
        ctx = ctx_new(5, 2)
        f = make_G(ctx, 6)
        lam = (3, 17, 29)
        composed = compose_monomial(f, MonomialMap.diagonal(*lam), MonomialMap.identity())
        for k, i, j, c in f.terms():
            expected = ctx.mul(c, ctx.mul(ctx.frob_q(lam[i]), lam[j]))
            self.assertEqual(composed.coeff[k][i][j], expected)

    def test_global_twist(self):
        ctx = ctx_new(5, 1)
        f = make_G(ctx, 1)
        g = make_G(ctx, 6)
        for t in range(1, 5):
            inner = MonomialMap(perm=(0, 1, 2), scalars=(1, 1, 1), twists=((-t) % 5,) * 3)
            outer = MonomialMap(perm=(0, 1, 2), scalars=(1, 1, 1), twists=(t,) * 3)
            composed = compose_monomial(g, inner, outer)
            self.assertEqual(composed, make_G(ctx, ctx.frob(6, t)))
            self.assertTrue(verify_witness(g, composed, inner, outer, samples=1000, seed=t))
        self.assertEqual(compose_monomial(f, MonomialMap.identity(), MonomialMap.identity()), f)

    def test_pattern_break(self):
        ctx = ctx_new(5, 1)
        inner = MonomialMap(perm=(0, 1, 2), scalars=(1, 1, 1), twists=(1, 0, 0))
        self.assertIsNone(compose_monomial(make_G(ctx, 1), inner, MonomialMap.identity()))

    def test_apply_matches_composition(self):
        ctx = ctx_new(3, 1)
        f = make_H(ctx, 5)
        inner = MonomialMap(perm=(2, 0, 1), scalars=(3, 4, 6), twists=(0, 0, 0))
        outer = MonomialMap(perm=(1, 2, 0), scalars=(2, 7, 5), twists=(0, 0, 0))
        composed = compose_monomial(f, inner, outer)
        v = Triple(3, 5, 6)
        self.assertEqual(composed.eval(v), outer.apply(ctx, f.eval(inner.apply(ctx, v))))
        self.assertTrue(verify_witness(f, composed, inner, outer))


class MonomialSearchTests(SimpleTestCase):

    def test_self_equivalence_identity_witness(self):
        ctx = ctx_new(5, 1)
        g1 = make_G(ctx, 1)
        report = el_equiv_monomial_search(g1, make_G(ctx, 1))
        self.assertTrue(report.equivalent)
        self.assertEqual(report.inner, MonomialMap.identity())
        self.assertEqual(report.outer, MonomialMap.identity())

    def test_cross_family_a1(self):
        ctx = ctx_new(5, 1)
        report = el_equiv_monomial_search(make_G(ctx, 1), make_H(ctx, 1))
        self.assertEqual(report.result, 'inequivalent')
        self.assertEqual(report.maps_searched, report.patterns_surviving * 31 ** 3)
        self.assertEqual(report.scope, 'CCZ via monomial restriction')

    @tag('slow')
    def test_cross_family_good_pairs(self):
        ctx = ctx_new(5, 1)
        good = good_set_rootscan(ctx).good
        for a, b in ((good[1], good[2]), (good[3], good[1]), (good[-1], good[-2])):
            report = el_equiv_monomial_search(make_G(ctx, a), make_H(ctx, b))
            self.assertEqual(report.result, 'inequivalent', f'a={hex(a)} b={hex(b)}')

    def test_good_parameter_against_representative(self):
        ctx = ctx_new(5, 1)
        a = next(a for a in good_set_rootscan(ctx).good if a != 1)
        report = el_equiv_monomial_search(make_G(ctx, a), make_G(ctx, 1))
        self.assertEqual(report.result, 'inequivalent')

    def test_frobenius_conjugate_parameter(self):
        ctx = ctx_new(5, 1)
        f, g = make_G(ctx, 6), make_G(ctx, ctx.frob(6, 1))
        report = el_equiv_monomial_search(f, g)
        self.assertTrue(report.equivalent)
        self.assertFalse(report.inner.is_diagonal)
        self.assertTrue(verify_witness(f, g, report.inner, report.outer))

    def test_m3_all_diagonal(self):
        ctx = ctx_new(3, 1)
        report = el_equiv_monomial_search(make_H(ctx, 5), make_H(ctx, 1))
        self.assertTrue(report.equivalent)
        self.assertTrue(verify_witness(make_H(ctx, 5), make_H(ctx, 1), report.inner, report.outer))

    def test_budget_exceeded(self):
        ctx = ctx_new(5, 1)
        with self.assertRaises(BudgetExceeded) as caught:
            el_equiv_monomial_search(make_G(ctx, 1), make_H(ctx, 1), max_maps=5000)
        self.assertEqual(caught.exception.report.result, BUDGET_EXCEEDED)
        self.assertLessEqual(caught.exception.report.maps_searched, 5000)

    def test_scope_labels(self):
        self.assertEqual(scope_label(4), 'monomial-inequivalent only')
        self.assertEqual(scope_label(7), 'monomial-inequivalent only')
        self.assertEqual(scope_label(5), 'CCZ via monomial restriction')

    def test_serialized(self):
        ctx = ctx_new(3, 1)
        report = el_equiv_monomial_search(make_G(ctx, 1), make_G(ctx, 1))
        data = EquivReportSerializer(report).data
        self.assertEqual(data['result'], 'equivalent')
        self.assertEqual(data['inner']['perm'], [0, 1, 2])
        self.assertEqual(data['inner']['scalars'], ['0x1', '0x1', '0x1'])
        self.assertEqual(len(data['footnotes']), 3)
