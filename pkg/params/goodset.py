"""
Good parameters: a in F* for which Q_a (family G) or P'_a (family H) has
no root in the field.
"""
import logging
from dataclasses import dataclass

import numpy as np

from gf2m.conf import check_work
from gf2m.field import require_theorem_mode
from univariate.polys import PolyVariant, eval_variant_vec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoodSetReport:
    m: int
    i: int
    d: int
    good: tuple
    method: str
    variant: PolyVariant = PolyVariant.Q

    @property
    def count(self):
        return len(self.good)

    @property
    def a1_good(self):
        return 1 in self.good


def good_set_rootscan(ctx, variant=PolyVariant.Q, max_units=None):
    """Parameters whose polynomial has no root, one root scan per a"""
    require_theorem_mode(ctx)
    check_work('good-set root scan', ctx.order * ctx.order, max_units)
    points = ctx.nonzero_array()
    good = tuple(
        a for a in ctx.nonzero()
        if not (eval_variant_vec(ctx, variant, a, points) == 0).any()
    )
    logger.debug(f'm={ctx.m} i={ctx.i}: {len(good)} good parameters by {variant.value} root scan')
    return GoodSetReport(m=ctx.m, i=ctx.i, d=ctx.d, good=good, method='rootscan', variant=variant)


def g_values(ctx, u=None):
    """g(u) = (u^d + 1) / u over the given points (default: all of F*)"""
    u = ctx.nonzero_array() if u is None else np.asarray(u, dtype=np.int64)
    return ctx.mul_vec(ctx.pow_vec(u, ctx.d) ^ 1, ctx.inv_vec(u))


def good_set_gimage(ctx):
    """Complement in F* of the image of g; Q_a has a root exactly when a = g(u)"""
    require_theorem_mode(ctx)
    hit = np.zeros(ctx.size, dtype=bool)
    hit[g_values(ctx)] = True
    good = tuple(int(a) for a in np.nonzero(~hit[1:])[0] + 1)
    return GoodSetReport(m=ctx.m, i=ctx.i, d=ctx.d, good=good, method='gimage')


def co_goodness(ctx):
    """Whether families G and H have the same good parameters"""
    g_good = good_set_rootscan(ctx, PolyVariant.Q).good
    h_good = good_set_rootscan(ctx, PolyVariant.PPRIME).good
    if g_good != h_good:
        logger.warning(
            f'Good sets differ at m={ctx.m} i={ctx.i}: '
            f'{sorted(set(g_good) ^ set(h_good))[:8]}'
        )
    return g_good == h_good
