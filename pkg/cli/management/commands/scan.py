from cli.base import ApntriCommand
from cli.config import RunConfig, add_field_arguments, add_output_arguments, add_run_arguments
from cli.reports import SCAN_FIELDS, correlation_percent, param_report
from cli.serializers import ScanSummarySerializer
from cli.workers import make_runner


class Command(ApntriCommand):
    help = 'Root counts, permutation/APN status and diagonal flag for every parameter a'

    def add_arguments(self, parser):
        add_field_arguments(parser)
        add_run_arguments(parser)
        add_output_arguments(parser)

    def run(self, **options):
        cfg = RunConfig.from_options(options)
        ctx = cfg.ctx
        runner = make_runner(cfg.threads)

        reports = []
        for family in cfg.families:
            for a in cfg.parameters():
                self.progress(f'scan m={ctx.m} i={ctx.i} {family}_{hex(a)}')
                reports.append(param_report(ctx, family, a, cfg.method, runner, cfg.chunk_size, cfg.budget))

        agree = sum(1 for r in reports if r.correlated)
        correlation = correlation_percent(agree, len(reports))
        data = ScanSummarySerializer({
            'field': ctx,
            'm': ctx.m,
            'i': ctx.i,
            'rows': reports,
            'correlated': agree,
            'total': len(reports),
            'correlation': correlation,
        }).data
        self.emit(cfg.output, rows=[r.csv_row() for r in reports], fieldnames=SCAN_FIELDS, data=data)
        self.stderr.write(f'correlation {agree}/{len(reports)} ({correlation})')

        broken = next((r for r in reports if not r.correlated), None)
        if broken is not None:
            self.mismatch(
                f'{broken.family}_{hex(broken.a)}: criterion_good={broken.criterion_good} '
                f'is_perm={broken.is_permutation} is_apn={broken.is_apn} '
                f'roots={broken.roots} witness={broken.witness}'
            )
