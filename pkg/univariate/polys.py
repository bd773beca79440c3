"""
The six root-equivalent polynomials of a parameter a, d = q^2 + q + 1:

    P   T^d + (a T^q + 1)^(q+1)
    P'  T^d + a T^(q^2+q) + 1
    Q   T^d + a T + 1
    Qq  T^d + a^q T + 1
    R   T^d + (a T + 1)^(q+1)
    S   T^d + a^q T^(q+1) + 1

Each takes the value 1 at T = 0, so root sets are subsets of F*.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from gf2m.exceptions import ZeroParameter

logger = logging.getLogger(__name__)


class PolyVariant(Enum):
    P = 'P'
    PPRIME = 'Pprime'
    Q = 'Q'
    QQ = 'Qq'
    R = 'R'
    S = 'S'


@dataclass(frozen=True)
class RootReport:
    variant: PolyVariant
    a: int
    roots: tuple

    @property
    def count(self):
        return len(self.roots)


def require_parameter(a):
    if not a:
        raise ZeroParameter('the family parameter a must be nonzero')


def eval_variant(ctx, variant, a, t):
    """Value of the named polynomial at t (scalar)"""
    require_parameter(a)
    tq = ctx.frob_q(t)
    tq2 = ctx.frob_q(tq)
    td = ctx.mul(ctx.mul(tq2, tq), t)

    if variant is PolyVariant.Q:
        return td ^ ctx.mul(a, t) ^ 1
    if variant is PolyVariant.QQ:
        return td ^ ctx.mul(ctx.frob_q(a), t) ^ 1
    if variant is PolyVariant.PPRIME:
        return td ^ ctx.mul(a, ctx.mul(tq2, tq)) ^ 1
    if variant is PolyVariant.S:
        return td ^ ctx.mul(ctx.frob_q(a), ctx.mul(tq, t)) ^ 1
    if variant is PolyVariant.P:
        u = ctx.mul(a, tq) ^ 1
    else:
        u = ctx.mul(a, t) ^ 1
    return td ^ ctx.mul(ctx.frob_q(u), u)


def eval_variant_vec(ctx, variant, a, t):
    """Same as eval_variant, elementwise over an array of points"""
    require_parameter(a)
    t = np.asarray(t, dtype=np.int64)
    tq = ctx.frob_vec(t)
    tq2 = ctx.frob_vec(tq)
    td = ctx.mul_vec(ctx.mul_vec(tq2, tq), t)

    if variant is PolyVariant.Q:
        return td ^ ctx.mul_vec(a, t) ^ 1
    if variant is PolyVariant.QQ:
        return td ^ ctx.mul_vec(ctx.frob_q(a), t) ^ 1
    if variant is PolyVariant.PPRIME:
        return td ^ ctx.mul_vec(a, ctx.mul_vec(tq2, tq)) ^ 1
    if variant is PolyVariant.S:
        return td ^ ctx.mul_vec(ctx.frob_q(a), ctx.mul_vec(tq, t)) ^ 1
    if variant is PolyVariant.P:
        u = ctx.mul_vec(a, tq) ^ 1
    else:
        u = ctx.mul_vec(a, t) ^ 1
    return td ^ ctx.mul_vec(ctx.frob_vec(u), u)


def eval_reciprocal_p(ctx, a, t):
    """P*(T) = T^d P(1/T) = T (T^q + a)^(q+1) + 1"""
    require_parameter(a)
    u = ctx.frob_q(t) ^ a
    return ctx.mul(t, ctx.mul(ctx.frob_q(u), u)) ^ 1


def eval_reciprocal_p_vec(ctx, a, t):
    require_parameter(a)
    t = np.asarray(t, dtype=np.int64)
    u = ctx.frob_vec(t) ^ a
    return ctx.mul_vec(t, ctx.mul_vec(ctx.frob_vec(u), u)) ^ 1


def _nonzero_roots(values, points):
    return tuple(int(r) for r in points[values == 0])


def roots_in_field(ctx, variant, a):
    """All nonzero roots, by evaluation at every t in F*"""
    points = ctx.nonzero_array()
    values = eval_variant_vec(ctx, variant, a, points)
    return RootReport(variant=variant, a=a, roots=_nonzero_roots(values, points))


def root_table(ctx, a):
    """RootReport for each of the six variants"""
    return {variant: roots_in_field(ctx, variant, a) for variant in PolyVariant}


def variants_root_consistent(ctx, a):
    """Either every variant has a nonzero root or none has"""
    table = root_table(ctx, a)
    verdicts = {report.count > 0 for report in table.values()}
    if len(verdicts) != 1:
        logger.warning(
            f'Root-equivalence broken at a={hex(a)}: '
            + ', '.join(f'{v.value}={r.count}' for v, r in table.items())
        )
    return len(verdicts) == 1


def substitution_steps(ctx, a):
    """
    Verdicts of the five substitution steps relating the variants.

    Steps 1, 4 and 5 compare root sets for being nonempty together;
    step 2 checks the reciprocal map P' -> Q root by root and step 3 the
    Frobenius map Q -> Qq root by root.
    """
    table = root_table(ctx, a)
    points = ctx.nonzero_array()
    p_star_roots = _nonzero_roots(eval_reciprocal_p_vec(ctx, a, points), points)

    def nonempty(report):
        return report.count > 0

    p, pprime, q, qq, r, s = (
        table[PolyVariant.P], table[PolyVariant.PPRIME], table[PolyVariant.Q],
        table[PolyVariant.QQ], table[PolyVariant.R], table[PolyVariant.S],
    )
    reciprocal = sorted(ctx.inv(t) for t in pprime.roots)
    frobenius = sorted(ctx.frob_q(t) for t in q.roots)
    return {
        'step1': nonempty(p) == bool(p_star_roots) == nonempty(pprime),
        'step2': reciprocal == list(q.roots),
        'step3': frobenius == list(qq.roots),
        'step4': nonempty(q) == nonempty(r),
        'step5': nonempty(s) == nonempty(q),
    }


def root_count_histogram(ctx, variant=PolyVariant.Q):
    """How many parameters a have each number of roots"""
    points = ctx.nonzero_array()
    histogram = Counter()
    for a in ctx.nonzero():
        values = eval_variant_vec(ctx, variant, a, points)
        histogram[int(np.count_nonzero(values == 0))] += 1
    return dict(sorted(histogram.items()))
