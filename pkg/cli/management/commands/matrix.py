from cli.base import ApntriCommand
from cli.config import RunConfig, add_field_arguments, add_output_arguments
from gf2m.conf import check_budget
from univariate.linearized import companion_product_test, linearized_kernel_dim
from univariate.polys import PolyVariant, roots_in_field
from univariate.serializers import MatrixReportSerializer

MATRIX_FIELDS = ('m', 'i', 'a_hex', 'singular', 'kernel_dim', 'q_roots', 'agree')


class Command(ApntriCommand):
    help = 'Companion-product singularity against ker L_a and the roots of Q_a'

    def add_arguments(self, parser):
        add_field_arguments(parser)
        parser.add_argument('--a', action='append', default=None, help='parameter as hex; repeatable')
        add_output_arguments(parser)

    def run(self, **options):
        cfg = RunConfig.from_options(options, theorem_mode=False)
        ctx = cfg.ctx
        if cfg.a_filter is None:
            check_budget('matrix test over every parameter', ctx.m, 'MAX_KERNEL_M')

        reports = []
        for a in cfg.parameters():
            singular = companion_product_test(ctx, a)
            kernel_dim = linearized_kernel_dim(ctx, a)
            q_roots = roots_in_field(ctx, PolyVariant.Q, a).count
            reports.append({
                'm': ctx.m,
                'i': ctx.i,
                'a': a,
                'singular': singular,
                'kernel_dim': kernel_dim,
                'q_roots': q_roots,
                'agree': singular == (kernel_dim > 0) == (q_roots > 0),
            })

        rows = [
            {**r, 'a_hex': hex(r['a']), 'singular': int(r['singular']), 'agree': int(r['agree'])}
            for r in reports
        ]
        data = MatrixReportSerializer(reports, many=True).data
        self.emit(cfg.output, rows=rows, fieldnames=MATRIX_FIELDS, data=data)

        broken = next((r for r in reports if not r['agree']), None)
        if broken is not None:
            self.mismatch(
                f'a={hex(broken["a"])}: singular={broken["singular"]} '
                f'kernel_dim={broken["kernel_dim"]} q_roots={broken["q_roots"]}'
            )
