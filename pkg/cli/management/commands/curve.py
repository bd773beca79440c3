from cli.base import ApntriCommand
from cli.config import RunConfig, add_field_arguments, add_output_arguments
from params.fibers import fiber_stats
from params.serializers import FiberStatsSerializer

CURVE_FIELDS = (
    'm', 'i', 'c0', 'gamma_affine', 'collision_pairs', 'gamma_direct', 'gamma_diagonal',
    'lower_bound', 'bound_ceiling', 'partition_ok', 'counts_agree',
)


def _blank(value):
    return '' if value is None else value


class Command(ApntriCommand):
    help = 'Fiber classes of g, collision-curve point counts and the good-parameter lower bound'

    def add_arguments(self, parser):
        add_field_arguments(parser)
        parser.add_argument('--direct', action='store_true', help='also run the pair scans over F* x F*')
        add_output_arguments(parser)

    def run(self, **options):
        cfg = RunConfig.from_options(options, theorem_mode=False)
        ctx = cfg.ctx
        self.progress(f'curve m={ctx.m} i={ctx.i} direct={options["direct"]}')
        stats = fiber_stats(ctx, direct=options['direct'])

        row = {
            'm': stats.m,
            'i': stats.i,
            'c0': stats.c0,
            'gamma_affine': stats.gamma_affine,
            'collision_pairs': _blank(stats.collision_pairs),
            'gamma_direct': _blank(stats.gamma_direct),
            'gamma_diagonal': _blank(stats.gamma_diagonal),
            'lower_bound': str(stats.lower_bound),
            'bound_ceiling': stats.lower_bound.ceiling,
            'partition_ok': int(stats.partition_ok),
            'counts_agree': int(stats.counts_agree),
        }
        self.emit(cfg.output, rows=[row], fieldnames=CURVE_FIELDS, data=FiberStatsSerializer(stats).data)

        if not stats.partition_ok:
            self.mismatch(f'fiber classes do not partition F at m={ctx.m}: {stats.class_counts}')
        if not stats.counts_agree:
            self.mismatch(
                f'collision-curve counts differ at m={ctx.m}: fibers {stats.gamma_affine}, '
                f'pairs {stats.collision_pairs}, equation {stats.gamma_direct} '
                f'(diagonal {stats.gamma_diagonal})'
            )
