from cli.base import ApntriCommand
from cli.config import RunConfig, add_field_arguments, add_output_arguments
from gf2m.serializers import FieldCtxSerializer
from trivariate.differential import classify_directions_G
from trivariate.serializers import DirectionSummarySerializer

CLASSIFY_FIELDS = (
    'a_hex', 'direction_type', 'total', 'exact_match', 'mismatches',
    'bound_met', 'bound_missed', 'h_zero', 'max_kernel',
)


class Command(ApntriCommand):
    help = 'Differential kernels of G_a per direction type against the predicted sizes'

    def add_arguments(self, parser):
        add_field_arguments(parser)
        parser.add_argument('--a', action='append', default=None, help='parameter as hex; repeatable')
        parser.add_argument('--chunk-size', type=int, default=None, dest='chunk_size')
        add_output_arguments(parser)

    def run(self, **options):
        cfg = RunConfig.from_options(options)
        ctx = cfg.ctx

        summaries = []
        for a in cfg.parameters():
            self.progress(f'classify m={ctx.m} i={ctx.i} G_{hex(a)}')
            summaries.append(classify_directions_G(ctx, a, cfg.chunk_size))

        rows = [
            {'a_hex': hex(s.a), 'direction_type': kind.value, **vars(tally)}
            for s in summaries
            for kind, tally in s.tallies.items()
            if tally.total
        ]
        data = {
            'field': FieldCtxSerializer(ctx).data,
            'summaries': DirectionSummarySerializer(summaries, many=True).data,
        }
        self.emit(cfg.output, rows=rows, fieldnames=CLASSIFY_FIELDS, data=data)

        broken = next((s for s in summaries if not s.consistent), None)
        if broken is not None:
            self.mismatch(f'G_{hex(broken.a)}: {broken.mismatches} directions off prediction, first {broken.first_mismatch}')
