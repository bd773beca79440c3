"""
Report rows assembled from the toolkit modules for the commands.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from checkers.status import status
from equivalence.diagonal import diag_criterion
from gf2m.field import ctx_new
from params.goodset import good_set_gimage, good_set_rootscan
from trivariate.quadform import make_family
from univariate.polys import PolyVariant, root_table

logger = logging.getLogger(__name__)

TABLE1_ROWS = ((3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2), (9, 1), (11, 1))
TABLE2_ROWS = ((3, 1), (3, 2), (5, 1), (5, 2))

TABLE1_FIELDS = ('m', 'i', 'q', 'group_order', 'good_count', 'a1_good')
TABLE2_FIELDS = ('m', 'i', 'q', 'group_order', 'permutations', 'correlation')
SCAN_FIELDS = (
    'a_hex', 'family', 'roots_P', 'roots_Pprime', 'roots_Q', 'roots_Qq', 'roots_R', 'roots_S',
    'criterion_good', 'is_perm', 'is_apn', 'method', 'max_kernel', 'diag', 'correlated',
)


@dataclass
class ParamReport:
    a: int
    family: str
    roots: dict
    criterion_good: bool
    variants_consistent: bool
    is_permutation: bool
    is_apn: bool
    method: str
    max_kernel: Optional[int]
    diag: bool
    witness: Optional[tuple] = None

    @property
    def correlated(self):
        return (
            self.variants_consistent
            and self.criterion_good == self.is_permutation == self.is_apn
        )

    def csv_row(self):
        row = {
            'a_hex': hex(self.a),
            'family': self.family,
            'criterion_good': int(self.criterion_good),
            'is_perm': int(self.is_permutation),
            'is_apn': int(self.is_apn),
            'method': self.method,
            'max_kernel': '' if self.max_kernel is None else self.max_kernel,
            'diag': int(self.diag),
            'correlated': int(self.correlated),
        }
        for variant in PolyVariant:
            row[f'roots_{variant.value}'] = self.roots[variant.value]
        return row


def param_report(ctx, family, a, method='auto', runner=None, chunk_size=None, max_units=None):
    table = root_table(ctx, a)
    criterion = PolyVariant.PPRIME if family == 'H' else PolyVariant.Q
    report = status(
        make_family(ctx, family, a), method=method, runner=runner, chunk_size=chunk_size, max_units=max_units,
    )
    return ParamReport(
        a=a,
        family=family,
        roots={variant.value: r.count for variant, r in table.items()},
        criterion_good=table[criterion].count == 0,
        variants_consistent=len({r.count > 0 for r in table.values()}) == 1,
        is_permutation=report.is_permutation,
        is_apn=report.is_apn,
        method=report.method,
        max_kernel=report.max_kernel,
        diag=diag_criterion(ctx, a),
        witness=report.witness,
    )


def correlation_percent(agree, total):
    return f'{(100 * agree) // total}%' if total else '100%'


# ============ TABLES ============

def table1_row(m, i, max_units=None):
    """Good-parameter count row; the two good-set methods must agree"""
    ctx = ctx_new(m, i, theorem_mode=True)
    rootscan = good_set_rootscan(ctx, max_units=max_units)
    gimage = good_set_gimage(ctx)
    row = {
        'm': m,
        'i': i,
        'q': ctx.q,
        'group_order': ctx.order,
        'good_count': rootscan.count,
        'a1_good': 'yes' if rootscan.a1_good else 'no',
    }
    return row, rootscan.good == gimage.good


def table2_row(m, i, family='G', method='kernel', runner=None, chunk_size=None, max_units=None):
    """Permutation count and three-way correlation over every a"""
    ctx = ctx_new(m, i, theorem_mode=True)
    reports = [
        param_report(
            ctx, family, a, method=method, runner=runner, chunk_size=chunk_size, max_units=max_units,
        )
        for a in ctx.nonzero()
    ]
    perms = sum(1 for r in reports if r.is_permutation)
    agree = sum(1 for r in reports if r.correlated)
    row = {
        'm': m,
        'i': i,
        'q': ctx.q,
        'group_order': ctx.order,
        'permutations': f'{perms}/{ctx.order}',
        'correlation': correlation_percent(agree, len(reports)),
    }
    mismatches = [r for r in reports if not r.correlated]
    return row, mismatches
