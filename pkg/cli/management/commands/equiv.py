from django.core.management.base import CommandError

from cli.base import ApntriCommand
from cli.config import EXIT_BUDGET, RunConfig, add_budget_argument, add_field_arguments, add_output_arguments
from equivalence.diagonal import d0, diag_criterion, diag_recipe_witness, diag_search, witness_verifies
from equivalence.search import EQUIVALENT, el_equiv_monomial_search, scope_label
from equivalence.serializers import DiagReportSerializer, EquivReportSerializer
from gf2m.exceptions import BudgetExceeded
from trivariate.quadform import make_family

DIAG_FIELDS = ('m', 'i', 'd0', 'family', 'a_hex', 'criterion', 'found', 'recipe_ok', 'agree')
CROSS_FIELDS = (
    'm', 'i', 'families', 'a_hex', 'b_hex', 'result', 'maps_searched',
    'patterns_searched', 'patterns_surviving', 'scope',
)
PAIRS = {'gh': ('G', 'H'), 'gg': ('G', 'G'), 'hh': ('H', 'H'), 'hg': ('H', 'G')}


class Command(ApntriCommand):
    help = 'Diagonal equivalence with the a = 1 member, or monomial equivalence between two members'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='mode', required=True)

        diag = subparsers.add_parser('diag', help='diagonal search against the criterion a^d = 1')
        add_field_arguments(diag)
        diag.add_argument('--a', required=True, help='parameter as hex')
        diag.add_argument('--family', choices=('g', 'h'), default='g')
        diag.add_argument(
            '--recipe-only', action='store_true', dest='recipe_only',
            help='skip the exhaustive search and only validate the closed-form witness',
        )
        add_output_arguments(diag, default='json')

        cross = subparsers.add_parser('cross', help='monomial search for g = outer o f o inner')
        add_field_arguments(cross)
        cross.add_argument('--a', required=True, help='parameter of the first map, hex')
        cross.add_argument('--b', required=True, help='parameter of the second map, hex')
        cross.add_argument('--pair', choices=sorted(PAIRS), default='gh', help='families of the two maps')
        add_budget_argument(cross, help_text='inner maps to examine at most (default: APNTRI_EQUIV_BUDGET)')
        add_output_arguments(cross, default='json')

    def run(self, **options):
        if options['mode'] == 'diag':
            self.run_diag(options)
        else:
            self.run_cross(options)

    # ============ DIAGONAL ============

    def run_diag(self, options):
        cfg = RunConfig.from_options({**options, 'a': [options['a']]}, theorem_mode=False)
        ctx = cfg.ctx
        a = cfg.a_filter[0]
        family = options['family'].upper()

        self.progress(f'diagonal search {family}_{hex(a)} at m={ctx.m} i={ctx.i}')
        criterion = diag_criterion(ctx, a)
        recipe = diag_recipe_witness(ctx, family, a)
        recipe_ok = recipe is None or witness_verifies(ctx, family, a, recipe)
        if options['recipe_only']:
            witness = None
            agree = recipe_ok
        else:
            witness = diag_search(ctx, family, a)
            agree = (witness is not None) == criterion and recipe_ok

        report = {
            'm': ctx.m,
            'i': ctx.i,
            'd0': d0(ctx),
            'family': family,
            'a': a,
            'criterion': criterion,
            'agree': agree,
            'witness': witness,
            'recipe': recipe,
        }
        row = {
            'm': ctx.m,
            'i': ctx.i,
            'd0': report['d0'],
            'family': family,
            'a_hex': hex(a),
            'criterion': int(criterion),
            'found': int(witness is not None),
            'recipe_ok': int(recipe_ok),
            'agree': int(agree),
        }
        self.emit(cfg.output, rows=[row], fieldnames=DIAG_FIELDS, data=DiagReportSerializer(report).data)

        if not agree:
            self.mismatch(
                f'{family}_{hex(a)}: criterion={criterion} witness={witness} recipe={recipe}'
            )

    # ============ MONOMIAL ============

    def run_cross(self, options):
        cfg = RunConfig.from_options({**options, 'a': None}, theorem_mode=False)
        ctx = cfg.ctx
        a, b = ctx.from_hex(options['a']), ctx.from_hex(options['b'])
        first, second = PAIRS[options['pair']]
        f = make_family(ctx, first, a)
        g = make_family(ctx, second, b)

        self.progress(f'monomial search {first}_{hex(a)} -> {second}_{hex(b)} at m={ctx.m} i={ctx.i}')
        try:
            report = el_equiv_monomial_search(f, g, max_maps=cfg.budget)
        except BudgetExceeded as e:
            if e.report is not None:
                self.emit_cross(cfg.output, e.report)
            raise CommandError(str(e), returncode=EXIT_BUDGET)

        self.emit_cross(cfg.output, report)

        # across families, a monomial witness contradicts inequivalence whenever
        # the restriction to monomial maps is known to be complete
        complete = ctx.m > 4 and scope_label(ctx.m) != 'monomial-inequivalent only'
        if first != second and report.result == EQUIVALENT and complete:
            self.mismatch(
                f'{first}_{hex(a)} and {second}_{hex(b)} are monomially equivalent: '
                f'inner {report.inner} outer {report.outer}'
            )

    def emit_cross(self, output, report):
        row = {
            'm': report.m,
            'i': report.i,
            'families': '/'.join(report.families),
            'a_hex': hex(report.a),
            'b_hex': hex(report.b),
            'result': report.result,
            'maps_searched': report.maps_searched,
            'patterns_searched': report.patterns_searched,
            'patterns_surviving': report.patterns_surviving,
            'scope': report.scope,
        }
        self.emit(output, rows=[row], fieldnames=CROSS_FIELDS, data=EquivReportSerializer(report).data)
